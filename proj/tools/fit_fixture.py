"""Calibrate the Eu:Y2SiO5 fixture tensors against the published effective values.

    python3 tools/fit_fixture.py            # residuals of fixtures/eu_yso.cfg
    python3 tools/fit_fixture.py --refine   # least-squares refinement from the current values

The refined [ground] and [excited] sections are printed in fixture syntax; the
file itself is never rewritten.
"""
import argparse
import configparser
import pathlib

import numpy as np
from scipy.optimize import least_squares
from scipy.spatial.transform import Rotation

ROOT = pathlib.Path(__file__).resolve().parents[1]

# (level, direction, doublet, g kHz/mT)
G_TARGETS = [
    ("ground", "I", 0, 4.0),
    ("ground", "II", 0, 14.0),
    ("ground", "II", 1, 14.0),
    ("ground", "III", 0, 12.0),
    ("excited", "I", 2, 24.0),
    ("excited", "III", 2, 2.5),
]
GAPS = {"ground": (34.54, 46.2), "excited": (75.0, 102.0)}  # MHz
RF_MU = 20.0  # b-axis moment of the +-3/2 <-> +-1/2 ground transition, kHz/mT
RF_U1 = 0.856  # |u1| with the dc field along direction II


def spin_ops(n=3):
    I = n - 0.5
    m = np.arange(I, -I - 1, -1)
    jp = np.diag(np.sqrt(I * (I + 1) - m[1:] * (m[1:] + 1)), 1)
    return (jp + jp.T) / 2, (jp - jp.T) / 2j, np.diag(m)


OPS = spin_ops()


def unpack(x):
    E, D = x[0], x[1]
    R = Rotation.from_euler("ZYZ", x[2:5], degrees=True).as_matrix()
    xx, yy, zz, xy, xz, yz = x[5:11]
    M = np.array([[xx, xy, xz], [xy, yy, yz], [xz, yz, zz]])
    return R @ np.diag([-E, E, D]) @ R.T, M


def zero_field(Q):
    h = sum(Q[i, j] * OPS[i] @ OPS[j] for i in range(3) for j in range(3))
    w, v = np.linalg.eigh(h)
    return w[::2], [v[:, 2 * k:2 * k + 2] for k in range(3)]


def zeeman(M, e):
    z = M @ e
    return sum(z[i] * OPS[i] for i in range(3))


def doublet(P, Z):
    w, u = np.linalg.eigh(P.conj().T @ Z @ P)
    return P @ u, w[1] - w[0]


def direction(theta, phi):
    th, ph = np.radians([theta, phi])
    return np.array([np.cos(th) * np.cos(ph), np.cos(th) * np.sin(ph), np.sin(th)])


def read_fixture(path):
    cp = configparser.ConfigParser(inline_comment_prefixes=(";",))
    cp.read(path)
    x = {}
    for lvl in ("ground", "excited"):
        s = cp[lvl]
        x[lvl] = np.array([float(s["E"]), float(s["D"])]
                          + [float(v) for v in s["euler_zyz_deg"].split(",")]
                          + [float(v) for v in s["M"].split(",")])
    dirs = {k.upper() if k != "b" else k: direction(*(float(v) for v in val.split(",")))
            for k, val in cp["directions"].items()}
    return x, dirs


def observables(x, dirs):
    """Named (model, target, scale) triples."""
    out = []
    levels = {}
    for lvl in ("ground", "excited"):
        Q, M = unpack(x[lvl])
        E, P = zero_field(Q)
        levels[lvl] = (M, P)
        for k, target in enumerate(GAPS[lvl]):
            out.append((f"{lvl} gap {k}", E[k + 1] - E[k], target, 0.05))
    for lvl, d, k, target in G_TARGETS:
        M, P = levels[lvl]
        out.append((f"g {lvl} {d} k{k}", doublet(P[k], zeeman(M, dirs[d]))[1], target, 0.5))
    M, P = levels["ground"]
    Zd = zeeman(M, dirs["II"])
    W = [doublet(p, Zd)[0] for p in P[:2]]
    G = W[1].conj().T @ zeeman(M, dirs["b"]) @ W[0]
    s = np.sqrt(abs(np.linalg.det(G)))
    out.append(("rf mu", 2 * s, RF_MU, 0.5))
    out.append(("rf |u1|", abs(G[0, 0]) / s, RF_U1, 0.01))
    return out


def report(x, dirs):
    for name, model, target, _ in observables(x, dirs):
        print(f"{name:22s} {model:10.4f}  target {target:8.4f}  rel {abs(model - target) / target:.2e}")


def refine(x0, dirs):
    keys = ("ground", "excited")
    split = len(x0["ground"])

    def residuals(v):
        x = {"ground": v[:split], "excited": v[split:]}
        r = [(m - t) / s for _, m, t, s in observables(x, dirs)]
        # Weak pull toward the starting point keeps the underdetermined fit near it.
        r.extend(1e-3 * (v - v0))
        return r

    v0 = np.concatenate([x0[k] for k in keys])
    sol = least_squares(residuals, v0, xtol=1e-12, ftol=1e-12)
    return {"ground": sol.x[:split], "excited": sol.x[split:]}


def print_sections(x):
    for lvl in ("ground", "excited"):
        v = x[lvl]
        print(f"[{lvl}]")
        print(f"E = {v[0]:.8f}")
        print(f"D = {v[1]:.8f}")
        print("euler_zyz_deg = " + ", ".join(f"{a:.8f}" for a in v[2:5]))
        print("M = " + ", ".join(f"{a:.8f}" for a in v[5:11]))
        print()


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--fixture", default=str(ROOT / "fixtures" / "eu_yso.cfg"))
    ap.add_argument("--refine", action="store_true")
    args = ap.parse_args()
    x, dirs = read_fixture(args.fixture)
    report(x, dirs)
    if args.refine:
        x = refine(x, dirs)
        print("\nrefined:")
        report(x, dirs)
        print()
        print_sections(x)


if __name__ == "__main__":
    main()
