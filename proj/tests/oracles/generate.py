"""Reference values for the C++ unit tests, computed independently with numpy/scipy.

Run from the repository root:  python3 tests/oracles/generate.py
Writes tests/oracles/oracles.json.
"""
import configparser
import json
import pathlib

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

ROOT = pathlib.Path(__file__).resolve().parents[2]
K = 2 * np.pi * 1e-3  # kHz -> rad/us


def spin_ops(n):
    I = n - 0.5
    m = np.arange(I, -I - 1, -1)
    d = len(m)
    jp = np.zeros((d, d))
    for i in range(1, d):
        jp[i - 1, i] = np.sqrt(I * (I + 1) - m[i] * (m[i] + 1))
    jx = (jp + jp.T) / 2
    jy = (jp - jp.T) / 2j
    jz = np.diag(m)
    return jx, jy, jz


def rot_zyz(a, b, c):
    def rz(t):
        return np.array([[np.cos(t), -np.sin(t), 0], [np.sin(t), np.cos(t), 0], [0, 0, 1]])

    def ry(t):
        return np.array([[np.cos(t), 0, np.sin(t)], [0, 1, 0], [-np.sin(t), 0, np.cos(t)]])

    return rz(a) @ ry(b) @ rz(c)


def load_fixture():
    cp = configparser.ConfigParser(inline_comment_prefixes=(";",))
    cp.read(ROOT / "fixtures" / "eu_yso.cfg")
    out = {}
    for lvl in ("ground", "excited"):
        s = cp[lvl]
        E, D = float(s["E"]), float(s["D"])
        ang = np.radians([float(x) for x in s["euler_zyz_deg"].split(",")])
        xx, yy, zz, xy, xz, yz = (float(x) for x in s["M"].split(","))
        M = np.array([[xx, xy, xz], [xy, yy, yz], [xz, yz, zz]])
        R = rot_zyz(*ang)
        out[lvl] = dict(Q=R @ np.diag([-E, E, D]) @ R.T, M=M)
    dirs = {}
    for k, v in cp["directions"].items():
        th, ph = np.radians([float(x) for x in v.split(",")])
        dirs[k.upper() if k.lower() != "b" else "b"] = np.array(
            [np.cos(th) * np.cos(ph), np.cos(th) * np.sin(ph), np.sin(th)])
    return out, dirs


def lab_hamiltonian(lvl, e, B, n=3):
    ops = spin_ops(n)
    h = sum(lvl["Q"][i, j] * ops[i] @ ops[j] for i in range(3) for j in range(3))
    z = B * lvl["M"] @ e
    return h + 1e-3 * sum(z[i] * ops[i] for i in range(3))


def doublet_spaces(lvl, n=3):
    """Zero-field eigenvectors grouped by doublet, ascending energy."""
    w, v = np.linalg.eigh(lab_hamiltonian(lvl, np.zeros(3), 0.0, n))
    return [v[:, 2 * k:2 * k + 2] for k in range(n)], w[::2]


def zeeman_op(lvl, e, n=3):
    ops = spin_ops(n)
    z = lvl["M"] @ e
    return sum(z[i] * ops[i] for i in range(3))  # kHz per mT


def zeeman_diag_basis(P, Z):
    """Rotate a doublet basis so the projected Zeeman block is diagonal, lower member first."""
    w, u = np.linalg.eigh(P.conj().T @ Z @ P)
    return P @ u, w[1] - w[0]


def level_oracles():
    fx, dirs = load_fixture()
    out = {"g": {}, "rf": {}, "optical": {}, "spectrum": {}}
    for lvl in ("ground", "excited"):
        P, energies = doublet_spaces(fx[lvl])
        out["spectrum"][lvl] = list(energies)
        for d in ("I", "II", "III"):
            Z = zeeman_op(fx[lvl], dirs[d])
            out["g"][f"{lvl}/{d}"] = [zeeman_diag_basis(p, Z)[1] for p in P]
    # Full diagonalization at small field: splittings against first order.
    P, _ = doublet_spaces(fx["ground"])
    exact = {}
    for d in ("I", "III"):
        for B in (0.8, 0.4, 0.2):
            w = np.linalg.eigvalsh(lab_hamiltonian(fx["ground"], dirs[d], B))
            exact[f"{d}/{B}"] = [1e3 * (w[2 * k + 1] - w[2 * k]) for k in range(3)]
    out["exact_splitting"] = exact
    # RF coupling between +-3/2 (k1) and +-1/2 (k0) along b, in Zeeman-diagonal bases at each direction.
    Zb = zeeman_op(fx["ground"], dirs["b"])
    for d in ("I", "II", "III"):
        Zd = zeeman_op(fx["ground"], dirs[d])
        W = [zeeman_diag_basis(p, Zd)[0] for p in P]
        G = W[1].conj().T @ Zb @ W[0]
        s = np.sqrt(abs(np.linalg.det(G)))
        out["rf"][d] = dict(mu=2 * s, u1=abs(G[0, 0]) / s, u2=abs(G[0, 1]) / s)
    # Optical overlaps between ground k0 and excited k2, and ground k1 / excited k0.
    Pe, _ = doublet_spaces(fx["excited"])
    for d in ("I", "III"):
        for kg, ke in ((0, 2), (2, 0), (1, 0)):
            wg = zeeman_diag_basis(P[kg], zeeman_op(fx["ground"], dirs[d]))[0]
            we = zeeman_diag_basis(Pe[ke], zeeman_op(fx["excited"], dirs[d]))[0]
            O = wg.conj().T @ we
            b = np.sqrt(abs(np.linalg.det(O)))
            out["optical"][f"{d}/{kg}{ke}"] = dict(b=b, absV=(np.abs(O) / b).tolist())
    return out


def a_matrix(p):
    U = np.array([[p["u1"], p["u2"]], [-np.conj(p["u2"]), np.conj(p["u1"])]])
    A = np.zeros((4, 4), complex)
    D, ds, dg = p["delta"], p["delta_s"], p["delta_g"]
    A[np.diag_indices(4)] = [D + ds, D - ds, -D + dg, -D - dg]
    A[:2, 2:] = p["omega0"] * np.exp(1j * p["phi"]) * U
    A[2:, :2] = A[:2, 2:].conj().T
    return K * A


def c(z):
    return [z.real, z.imag]


def drive_oracles():
    cases = []
    for p in (
        dict(delta=0.0, delta_s=5.0, delta_g=3.0, omega0=30.0, u1=0.856 + 0.0j, u2=0.517j, phi=0.0),
        dict(delta=4.0, delta_s=28.0, delta_g=28.0, omega0=30.0, u1=0.6 - 0.3j, u2=0.2 + 0.714142843j, phi=0.7),
        dict(delta=0.0, delta_s=0.0, delta_g=0.0, omega0=25.0, u1=1.0 + 0.0j, u2=0.0j, phi=0.0),
    ):
        nrm = np.sqrt(abs(p["u1"]) ** 2 + abs(p["u2"]) ** 2)
        p["u1"] /= nrm
        p["u2"] /= nrm
        A = a_matrix(p)
        zeta = np.sort(np.linalg.eigvalsh(A / K))[::-1]
        t = 13.7
        Ut = expm(-0.5j * A * t)
        cases.append(dict(
            params={k: (c(v) if isinstance(v, complex) else v) for k, v in p.items()},
            zeta=zeta.tolist(), t=t,
            U_re=Ut.real.tolist(), U_im=Ut.imag.tolist()))
    return cases


def sech_oracles():
    out = []
    fwhm, rabi, trunc = 120.0, 30.0, 4.0
    beta = 2 * np.arccosh(2.0) / fwhm
    for (ds, dg, chirp, u1, u2) in ((0.0, 0.0, 60.0, 1.0, 0.0), (40.0, 40.0, 60.0, 0.856, 0.517j),
                                     (96.0, 32.0, 50.0, 0.6, 0.8j), (20.0, 10.0, 0.0, 0.856, 0.517j)):
        nrm = np.hypot(abs(u1), abs(u2))
        u1, u2 = complex(u1) / nrm, complex(u2) / nrm
        p = dict(delta=0.0, delta_s=ds, delta_g=dg, omega0=rabi, u1=u1, u2=u2, phi=0.0)

        def rhs(t, y):
            q = dict(p)
            q["omega0"] = rabi / np.cosh(beta * t)
            q["delta"] = 0.5 * chirp * np.tanh(beta * t)
            return -0.5j * a_matrix(q) @ y

        T = trunc * fwhm
        pop = 0.0
        for s in (0, 1):
            y0 = np.zeros(4, complex)
            y0[s] = 1.0
            r = solve_ivp(rhs, (-T, T), y0, method="DOP853", rtol=1e-11, atol=1e-12)
            y = r.y[:, -1]
            pop += 0.5 * (abs(y[2]) ** 2 + abs(y[3]) ** 2)
        out.append(dict(delta_s=ds, delta_g=dg, chirp=chirp, u1=c(complex(u1)), u2=c(complex(u2)),
                        fwhm=fwhm, peak_rabi=rabi, truncation=trunc, transfer=pop))
    return out


def odnmr_oracles():
    p = dict(delta=0.0, delta_s=27.9, delta_g=27.9, omega0=30.0, u1=0.856 + 0j, u2=0.517j, phi=0.0)
    nrm = np.hypot(abs(p["u1"]), abs(p["u2"]))
    p["u1"] /= nrm
    p["u2"] /= nrm
    A = a_matrix(p)
    rho = np.diag([0, 0, 0.5, 0.5]).astype(complex)
    ts = [0.0, 7.5, 31.0, 120.25, 517.0]
    vals = []
    for t in ts:
        U = expm(-0.5j * A * t)
        r = U @ rho @ U.conj().T
        vals.append(0.5 * r[2, 2].real + 0.5 * r[3, 3].real)
    return dict(params={k: (c(v) if isinstance(v, complex) else v) for k, v in p.items()}, t=ts, intensity=vals)


def echo_oracles():
    """Direct matrix product of the storage sequence for a synthetic six-level system."""
    ds, dg, de, rabi = 12.0, 31.0, 22.0, 30.0
    u1, u2 = 0.8 + 0.1j, 0.3 - 0.5j
    n = np.sqrt(abs(u1) ** 2 + abs(u2) ** 2)
    u1, u2 = u1 / n, u2 / n
    Vge = np.array([[0.6, 0.8j], [0.8j, 0.6]])
    Vse = np.array([[np.cos(0.4), -np.sin(0.4)], [np.sin(0.4), np.cos(0.4)]])
    bge = 0.78
    rf = dict(delta=0.0, delta_s=ds, delta_g=dg, omega0=rabi, u1=u1, u2=u2, phi=0.0)
    tau0 = np.pi / (K * rabi)
    Urf = np.eye(6, dtype=complex)
    Urf[:4, :4] = expm(-0.5j * a_matrix(rf) * tau0)

    def opt(V, g, area):
        U = np.eye(6, dtype=complex)
        cs, sn = np.cos(area / 2), np.sin(area / 2)
        U[g:g + 2, g:g + 2] = cs * np.eye(2)
        U[4:6, 4:6] = cs * np.eye(2)
        U[g:g + 2, 4:6] = -1j * sn * V
        U[4:6, g:g + 2] = -1j * sn * V.conj().T
        return U

    rates = 0.5 * K * np.array([ds, -ds, dg, -dg, de, -de])

    def free(t):
        return np.diag(np.exp(-1j * rates * t))

    o1, o2 = opt(Vge, 2, np.pi / 2), opt(Vse, 0, np.pi)
    out = []
    for variant, f in (("centered", (0.25, 0.5, 0.25)), ("shifted", (0.125, 0.5, 0.375))):
        for Ts in (2 * tau0, 100.0, 437.0):
            T = Ts - 2 * tau0
            psi = np.zeros(6, complex)
            psi[2] = 1.0
            out_state = o2 @ free(f[2] * T) @ Urf @ free(f[1] * T) @ Urf @ free(f[0] * T) @ o2 @ o1 @ psi
            amp = out_state[2:4].conj() @ (bge * Vge) @ out_state[4:6]
            out.append(dict(variant=variant, T_s=Ts, amplitude=c(complex(amp))))
    return dict(delta_s=ds, delta_g=dg, delta_e=de, rf_rabi=rabi, u1=c(u1), u2=c(u2),
                Vge_re=Vge.real.tolist(), Vge_im=Vge.imag.tolist(), Vse=Vse.tolist(), b_ge=bge,
                cases=out)


def spin_oracles():
    out = {}
    for n in (2, 3, 4, 5):
        jx, _, _ = spin_ops(n)
        out[str(n)] = [2 * jx[k - 1, k] for k in range(1, 2 * n)]
    return out


def main():
    data = dict(
        spin_ladder=spin_oracles(),
        levels=level_oracles(),
        drive=drive_oracles(),
        sech=sech_oracles(),
        odnmr=odnmr_oracles(),
        echo=echo_oracles(),
    )
    path = ROOT / "tests" / "oracles" / "oracles.json"
    path.write_text(json.dumps(data, indent=1) + "\n")
    print("wrote", path)


if __name__ == "__main__":
    main()
