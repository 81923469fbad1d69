"""Run the claim suite and print a verdict table per claim family.

Full JSON reports go to ``results/claims.json``.
"""

import argparse
from dataclasses import dataclass, field
from pathlib import Path

from markovpst.detector import FAMILIES, claims_to_json, run_claim_suite, summary


@dataclass
class Config:
    families: list[str] = field(default_factory=lambda: list(FAMILIES))
    nmax: int = 50
    horizon_factor: int = 4
    tol: float = 1e-9
    out: Path = Path("results/claims.json")


def run(cfg: Config) -> None:
    reports = run_claim_suite(cfg.horizon_factor, cfg.tol, cfg.families, cfg.nmax)
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(claims_to_json(reports))
    width = max(len(k) for k in summary(reports))
    print(f"{'claim':{width}s}  confirmed  refuted  ambiguous")
    for key, c in summary(reports).items():
        print(f"{key:{width}s}  {c['confirmed']:9d}  {c['refuted']:7d}  {c['ambiguous']:9d}")
    refuted_products = [r for r in reports if r.claim == "product-pst" and r.verdict == "refuted"]
    for r in refuted_products:
        print(f"  no PST: {r.family} P_{r.params['i']} x P_{r.params['j']}")
    print(f"wrote {cfg.out}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--family", action="append", choices=FAMILIES)
    p.add_argument("--nmax", type=int, default=Config.nmax)
    p.add_argument("--horizon-factor", type=int, default=Config.horizon_factor)
    p.add_argument("--tol", type=float, default=Config.tol)
    p.add_argument("--out", type=Path, default=Config.out)
    a = p.parse_args()
    run(Config(a.family or list(FAMILIES), a.nmax, a.horizon_factor, a.tol, a.out))
