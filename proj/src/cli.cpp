namespace sdtop { int cli_stub=0; }
