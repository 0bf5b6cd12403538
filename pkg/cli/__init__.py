"""transprob batch command-line front end. See cli/main.py."""
