# exceptions package
