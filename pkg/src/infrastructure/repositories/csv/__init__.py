# csv repositories package
