# value_objects package
