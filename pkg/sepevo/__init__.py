# sepevo/__init__.py
