"""
Main entry point for the sutured Floer toolkit
"""
import sys
from pathlib import Path

# Add the repository root to Python path
sys.path.insert(0, str(Path(__file__).parent))

from app.main import main

if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\nStopped by user", file=sys.stderr)
        sys.exit(130)
