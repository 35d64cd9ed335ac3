"""High-frequency expansion of the one-dimensional regularity-loss model.

Prints fitted coefficients next to the closed forms and the fit residual for
windows of fixed width moved towards infinity.

    python3 scripts/dnsf_asymptotics.py
"""
import numpy as np

from dissipa.cli import dnsf_closed_forms
from dissipa.dissipativity import asymptotic_fit
from dissipa.models import build_dnsf1d


def main() -> None:
    b = build_dnsf1d()
    branches = asymptotic_fit(b.system)
    for k, br in enumerate(branches, 1):
        coeffs = "  ".join(f"l{o}={complex(c).real:+.6f}" for o, c in sorted(br.coefficients.items(), reverse=True))
        print(f"branch {k}: {coeffs}  residual {br.residual:.2e}")
    for key, val in dnsf_closed_forms(b.params).items():
        print(f"closed form {key:24s} {val:.6f}")
    print("window start  residuals per branch")
    for lo in (1.0, 1.5, 2.0, 2.5):
        res = [br.residual for br in asymptotic_fit(b.system, radii=np.logspace(lo, lo + 1.5, 61))]
        print(f"10^{lo:<4}      " + "  ".join(f"{r:.2e}" for r in res))


if __name__ == "__main__":
    main()
