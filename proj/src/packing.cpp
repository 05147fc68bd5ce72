namespace sdtop { }
