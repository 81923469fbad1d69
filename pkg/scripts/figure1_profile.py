"""Walker occupation on the 6-vertex path started at vertex 1, t = 0..5.

Writes the profile CSV and, when matplotlib is installed, one bar chart per
time step.
"""

import argparse
from dataclasses import dataclass
from pathlib import Path

from markovpst.analytic import path_probability_profile


@dataclass
class Config:
    n: int = 6
    start: int = 1
    out_dir: Path = Path("results")
    plot: bool = True


def run(cfg: Config) -> None:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    prof = path_probability_profile(cfg.n, cfg.start, cfg.n - 1)
    csv_path = cfg.out_dir / f"profile_path{cfg.n}_start{cfg.start}.csv"
    csv_path.write_text(prof.to_csv())
    print(f"wrote {csv_path}")
    if not cfg.plot:
        return
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not installed; skipping plot")
        return
    fig, axes = plt.subplots(1, cfg.n, figsize=(3 * cfg.n, 2.6), sharey=True)
    for t, ax in enumerate(axes):
        occ = prof.at(t)
        ax.bar(range(cfg.n), [occ.get(k, 0.0) for k in range(cfg.n)])
        ax.set_title(f"t = {t}")
        ax.set_xlabel("vertex k")
        ax.set_xticks(range(cfg.n))
    axes[0].set_ylabel("probability")
    axes[0].set_ylim(0, 1.05)
    fig.tight_layout()
    png = cfg.out_dir / f"profile_path{cfg.n}_start{cfg.start}.png"
    fig.savefig(png, dpi=120)
    print(f"wrote {png}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=Config.n)
    p.add_argument("--start", type=int, default=Config.start)
    p.add_argument("--out-dir", type=Path, default=Config.out_dir)
    p.add_argument("--no-plot", action="store_true")
    a = p.parse_args()
    run(Config(a.n, a.start, a.out_dir, not a.no_plot))
