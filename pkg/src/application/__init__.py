# application package
