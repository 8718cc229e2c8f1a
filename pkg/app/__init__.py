# Sutured Floer homology and contact invariants from partial open books
