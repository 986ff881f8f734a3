"""Built-in data: default configuration and bundled toy machines."""
