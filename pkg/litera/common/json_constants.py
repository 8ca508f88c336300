INDENT = 4
