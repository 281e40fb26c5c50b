import os
import sys

# The build exports the extension module's directory and the in-tree package
# directory; fall back to an installed tsrnn when they are absent.
for var in ("TSRNN_MODULE_DIR", "TSRNN_PYTHON_PKG"):
    path = os.environ.get(var)
    if path and path not in sys.path:
        sys.path.insert(0, path)
