"""transprob core.tooling submodule: report rendering and the selftest runner. See core/__init__.py for the sys.path contract."""
