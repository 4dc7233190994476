"""Performance and acceptance tests for the WFGCRI toolkit."""
