"""Analyze every catalog model and write one JSON report per model.

    python3 scripts/catalog_report.py --out results/catalog
"""
import argparse
import json
from pathlib import Path

from dissipa.cli import RunConfig, cmd_analyze
from dissipa.models import CATALOG


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results/catalog")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in sorted(CATALOG):
        cfg = RunConfig(model=name)
        report, code = cmd_analyze(cfg)
        (out / f"{name}.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
        cls = report["verdicts"].get("classification") or {}
        print(f"{name:10s} exit={code} expected_met={report.get('expected_met')} "
              f"type={(cls.get('p'), cls.get('q')) if 'p' in cls else None}")


if __name__ == "__main__":
    main()
