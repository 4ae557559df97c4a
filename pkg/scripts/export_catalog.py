"""Write the built-in catalog, in canonical rule-file form, to docs/catalog.rules."""

from pathlib import Path

from thetaquad.catalog import export_text

if __name__ == "__main__":
    out = Path(__file__).resolve().parents[1] / "docs" / "catalog.rules"
    out.write_text(export_text(), encoding="utf-8")
    print(f"wrote {out}")
