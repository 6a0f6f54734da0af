# infrastructure package
