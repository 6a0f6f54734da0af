# simulation package
