"""Extended-precision direct-summation oracle for the golden vectors.

Run with `python3 golden.py`. The printed values are frozen into
`tests/golden.rs` and `tests/acceptance.rs`. Nothing here shares code with
the Rust implementation.
"""
from mpmath import mp, mpf, log, sqrt, fabs

mp.dps = 50

P = [mpf(1) / 2, mpf(1) / 2]
Q = [mpf(1) / 4, mpf(3) / 4]


def chi2(p, q):
    return sum((a - b) ** 2 / b for a, b in zip(p, q))


def kl(p, q):
    return sum(a * log(a / b) for a, b in zip(p, q))


def rel_j(p, q):
    return sum((a - b) * log((a + b) / (2 * b)) for a, b in zip(p, q))


def rel_js(p, q):
    return sum(a * log(2 * a / (a + b)) for a, b in zip(p, q))


def rel_ag(p, q):
    return sum((a + b) / 2 * log((a + b) / (2 * a)) for a, b in zip(p, q))


def delta(p, q):
    return sum((a - b) ** 2 / (a + b) for a, b in zip(p, q))


def bhat(p, q):
    return sum(sqrt(a * b) for a, b in zip(p, q))


def vajda(p, q, m):
    return sum(fabs(a - b) ** m / b ** (m - 1) for a, b in zip(p, q))


def omega(p, q, s):
    s = mpf(s)
    return (sum(a * ((a + b) / (2 * a)) ** s for a, b in zip(p, q)) - 1) / (s * (s - 1))


def phi(p, q, s):
    s = mpf(s)
    return (sum(a ** s * b ** (1 - s) for a, b in zip(p, q)) - 1) / (s * (s - 1))


# psi_1 and its derivatives, written out by hand for s = 1
def psi1(x):
    return (x - 1) / 2 + (x + 1) / 2 * log((x + 1) / (2 * x))


def psi1_d1(x):
    return (1 - 1 / x + log((x + 1) / (2 * x))) / 2


def psi1_d2(x):
    return 1 / (2 * x * x * (x + 1))


def psi1_d3(x):
    # derivative of 1/(2 x^2 (x+1)) via mpmath numerical differentiation
    return mp.diff(psi1_d2, x)


def psi0_d1(x):
    return (1 - x) / (2 * (1 + x)) - log((x + 1) / (2 * x))


r = min(a / b for a, b in zip(P, Q))
R = max(a / b for a, b in zip(P, Q))

E1 = sum((a - b) * psi1_d1(a / b) for a, b in zip(P, Q))
Estar1 = sum((a - b) * psi1_d1((a + b) / (2 * b)) for a, b in zip(P, Q))
E0 = sum((a - b) * psi0_d1(a / b) for a, b in zip(P, Q))
Estar0 = sum((a - b) * psi0_d1((a + b) / (2 * b)) for a, b in zip(P, Q))
A1 = (R - r) * (psi1_d1(R) - psi1_d1(r)) / 4
B1 = ((R - 1) * psi1(r) + (1 - r) * psi1(R)) / (R - r)
delta1 = psi1_d2(r) - psi1_d2(R)
sup3 = max(fabs(psi1_d3(r + (R - r) * k / 4096)) for k in range(4097))

M = [(a + b) / 2 for a, b in zip(P, Q)]
omega_half_oracle = 4 * (1 - bhat(P, M))

G1 = rel_ag(P, Q)
gap_half = fabs(G1 - E1 / 2)
gap_star = fabs(G1 - Estar1)
c1 = delta1 / 8 * chi2(P, Q)
c2_half = sup3 / 12 * vajda(P, Q, 3)
c3_half = (psi1_d1(R) - psi1_d1(r)) * vajda(P, Q, 1)

rows = [
    ("r", r), ("R", R),
    ("chi2_pq", chi2(P, Q)), ("chi2_qp", chi2(Q, P)),
    ("kl_pq", kl(P, Q)), ("kl_qp", kl(Q, P)),
    ("rel_j_pq", rel_j(P, Q)), ("rel_j_qp", rel_j(Q, P)),
    ("rel_js_pq", rel_js(P, Q)), ("rel_js_qp", rel_js(Q, P)),
    ("rel_ag_pq", rel_ag(P, Q)), ("rel_ag_qp", rel_ag(Q, P)),
    ("delta", delta(P, Q)), ("bhat", bhat(P, Q)), ("hellinger", 1 - bhat(P, Q)),
    ("v", vajda(P, Q, 1)), ("abs_chi3", vajda(P, Q, 3)),
    ("psi_sym", chi2(P, Q) + chi2(Q, P)), ("j", kl(P, Q) + kl(Q, P)),
    ("i", (rel_js(P, Q) + rel_js(Q, P)) / 2), ("t", (rel_ag(P, Q) + rel_ag(Q, P)) / 2),
    ("omega_m1", omega(P, Q, -1)), ("omega_half", omega(P, Q, mpf(1) / 2)),
    ("omega_half_oracle", omega_half_oracle), ("omega_2", omega(P, Q, 2)),
    ("omega_m_half", omega(P, Q, -mpf(1) / 2)), ("omega_m2", omega(P, Q, -2)),
    ("phi_2", phi(P, Q, 2)), ("phi_half", phi(P, Q, mpf(1) / 2)),
    ("e_omega_1", E1), ("e_star_omega_1", Estar1),
    ("e_omega_0", E0), ("e_star_omega_0", Estar0),
    ("a_omega_1", A1), ("b_omega_1", B1),
    ("delta_omega_1", delta1), ("psi3_sup_1", sup3),
    ("psi1_d1_at_2", psi1_d1(mpf(2))), ("psi1_d2_at_2_3", psi1_d2(mpf(2) / 3)),
    ("gap_half_e", gap_half), ("gap_e_star", gap_star),
    ("cand1", c1), ("cand2_half", c2_half), ("cand3_half", c3_half),
    ("cand2_star", c2_half / 2), ("cand3_star", c3_half / 2),
    ("lp_mean_m1_1_2", 1 / log(2)), ("lp_mean_0_1_2", 4 / mp.e),
    ("lp_power_m1", log(mpf(2.5)) - log(mpf(1.5))),
]
for name, val in rows:
    print(f"{name:20s} {mp.nstr(val, 20)}")

# Near-identical pairs with dyadic components (their sums are exactly 1 in
# binary), where cancellation in the naive formulas is worst.
NEAR_P = [mpf(1) / 2, mpf(1) / 2]
NEAR_Q = [mpf(1) / 2 + mpf(2) ** -10, mpf(1) / 2 - mpf(2) ** -10]
NEAR3_P = [mpf(1) / 4, mpf(1) / 4, mpf(1) / 2]
NEAR3_Q = [mpf(1) / 4 + mpf(2) ** -12, mpf(1) / 4, mpf(1) / 2 - mpf(2) ** -12]


def omega_any(p, q, s):
    if s == 0:
        return rel_js(p, q)
    if s == 1:
        return rel_ag(p, q)
    return omega(p, q, s)


def phi_any(p, q, s):
    if s == 0:
        return kl(q, p)
    if s == 1:
        return kl(p, q)
    return phi(p, q, s)


def psi_direct(x, s):
    s = mpf(s)
    t = (x + 1) / (2 * x)
    return (x * t ** s - x - s * (1 - x) / 2) / (s * (s - 1))


near_rows = []
for s in [-1, 0, mpf(1) / 2, 1, 2]:
    near_rows.append((f"near_omega_{s}", omega_any(NEAR_P, NEAR_Q, s)))
    near_rows.append((f"near3_omega_{s}", omega_any(NEAR3_P, NEAR3_Q, s)))
for s in [0, mpf(1) / 2, 1, 2]:
    near_rows.append((f"near_phi_{s}", phi_any(NEAR_P, NEAR_Q, s)))
x_near = 1 + mpf(2) ** -10
for s in [-1, mpf(1) / 2, 2]:
    near_rows.append((f"near_psi_{s}", psi_direct(x_near, s)))
    near_rows.append((f"near_psi_d1_{s}", mp.diff(lambda y: psi_direct(y, s), x_near)))
for name, val in near_rows:
    print(f"{name:20s} {mp.nstr(val, 20)}")
