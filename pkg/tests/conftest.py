import sys
from pathlib import Path

# make the shared helpers (gen.py, corpus.py) importable from every test module
sys.path.insert(0, str(Path(__file__).parent))
