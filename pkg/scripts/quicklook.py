"""Plot the delivery-age and service-rate traces of one or more run CSVs.

Each input file becomes one line per panel, labeled by file stem. Example:

    python3 scripts/quicklook.py results/central_activation__*.csv -o look.png
"""

import argparse
import csv
import sys
from pathlib import Path


def load_run(path: Path):
    slots, aoi_cum, service = [], [], []
    with open(path, newline="") as fh:
        rows = csv.DictReader(ln for ln in fh if not ln.startswith("#"))
        for row in rows:
            slots.append(int(row["slot"]))
            aoi_cum.append(float(row["avg_inst_aoi_cum"])
                           if row["avg_inst_aoi_cum"] else None)
            service.append(float(row["service_rate"]))
    return slots, aoi_cum, service


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("files", nargs="+", help="run CSV files")
    parser.add_argument("-o", "--out", default="quicklook.png")
    parser.add_argument("--window", type=int, default=50,
                        help="service-rate smoothing window (slots)")
    args = parser.parse_args()

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib is not installed; no plot produced", file=sys.stderr)
        return 1

    fig, (ax_aoi, ax_sr) = plt.subplots(2, 1, figsize=(9, 7), sharex=True)
    for name in args.files:
        path = Path(name)
        slots, aoi_cum, service = load_run(path)
        ax_aoi.plot(slots, aoi_cum, label=path.stem, linewidth=1.2)
        w = max(1, args.window)
        smoothed = [sum(service[max(0, i - w + 1):i + 1])
                    / len(service[max(0, i - w + 1):i + 1])
                    for i in range(len(service))]
        ax_sr.plot(slots, smoothed, label=path.stem, linewidth=1.2)
    ax_aoi.set_ylabel("running mean delivery age")
    ax_sr.set_ylabel(f"service rate ({args.window}-slot mean)")
    ax_sr.set_xlabel("slot")
    ax_aoi.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(args.out, dpi=130)
    print(args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
