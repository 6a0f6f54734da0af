# domain package
