# entities package
