# presentation package
