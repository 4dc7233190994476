"""Integration tests for the wfgcri command line."""
