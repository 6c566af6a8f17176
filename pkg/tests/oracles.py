"""Independent reference computations in plain numpy.

These do not import the package. Values used as frozen expectations in
the tests are produced here and cross-checked against the package.
"""

import numpy as np


def vn_entropy_bits(m):
    w = np.linalg.eigvalsh((m + m.conj().T) / 2)
    w = w[w > 1e-12]
    return float(-(w * np.log2(w)).sum())


def ptrace(m, dims, keep):
    n = len(dims)
    t = m.reshape(list(dims) * 2)
    letters = "abcdefghijklmnopqrstuvwxyz"
    ins = list(letters[:n])
    outs = list(letters[n:2 * n])
    for i in range(n):
        if i not in keep:
            outs[i] = ins[i]
    spec = "".join(ins) + "".join(outs) + "->" + "".join(ins[i] for i in keep) + \
        "".join(outs[i] for i in keep)
    dk = int(np.prod([dims[i] for i in keep]))
    return np.einsum(spec, t).reshape(dk, dk)


def classical_twirl_coherent_residual():
    """Coherent-decoupling residual of the cyclic-shift twirl of the perfect
    classical bit channel on (|00>+|11>)/sqrt2, environments kept.

    Registers: x (shared key, uniform), R, A' -> B, E0 (copy made by
    Alice's local dephasing), E1 (copy made by the channel).
    """
    # pure state of R B E0 E1 for key x, built gate by gate
    branches = []
    for x in range(2):
        psi = np.zeros((2, 2, 2, 2), dtype=complex)  # R, B, E0, E1
        for r in range(2):
            a = r                 # input (|00>+|11>)/sqrt2 on R A'
            e0 = a                # local dephasing copies A' into E0
            a = (a + x) % 2       # key-controlled shift
            b, e1 = a, a          # classical channel copies into E1
            b = (b - x) % 2       # Bob undoes the shift
            psi[r, b, e0, e1] += 1 / np.sqrt(2)
        branches.append(psi.ravel())
    dq = 16
    sigma = np.zeros((2 * dq, 2 * dq), dtype=complex)
    for x, v in enumerate(branches):
        sigma[x * dq:(x + 1) * dq, x * dq:(x + 1) * dq] = 0.5 * np.outer(v, v.conj())
    sx = ptrace(sigma, [2, dq], [0])
    sq = ptrace(sigma, [2, dq], [1])
    diff = sigma - np.kron(sx, sq)
    return float(np.abs(np.linalg.eigvalsh(diff)).sum())


def isotropic_mutual_info_depolarizing(p):
    """I(A;B) of (id (x) depolarizing_p)(Phi_2) in bits."""
    phi = np.zeros(4)
    phi[0] = phi[3] = 1 / np.sqrt(2)
    rho = np.outer(phi, phi)
    rho = (1 - p) * rho + p * np.kron(ptrace(rho, [2, 2], [0]), np.eye(2) / 2)
    ha = vn_entropy_bits(ptrace(rho, [2, 2], [0]))
    hb = vn_entropy_bits(ptrace(rho, [2, 2], [1]))
    return ha + hb - vn_entropy_bits(rho)


def dephased_bell_father_bounds(p):
    """(I(A>B), I(A;B)/2) of Phi_2 with Kraus {sqrt(1-p) I, sqrt(p) Z} on B."""
    phi = np.zeros(4)
    phi[0] = phi[3] = 1 / np.sqrt(2)
    rho = np.outer(phi, phi)
    zb = np.kron(np.eye(2), np.diag([1.0, -1.0]))
    rho = (1 - p) * rho + p * zb @ rho @ zb
    ha = vn_entropy_bits(ptrace(rho, [2, 2], [0]))
    hb = vn_entropy_bits(ptrace(rho, [2, 2], [1]))
    hab = vn_entropy_bits(rho)
    return hb - hab, (ha + hb - hab) / 2


def binary_entropy(q):
    return float(-(q * np.log2(q) + (1 - q) * np.log2(1 - q)))


if __name__ == "__main__":
    print("classical twirl coherent residual:", classical_twirl_coherent_residual())
    for p in (0.1, 0.25):
        print(f"I(A;B) depolarizing p={p}:", repr(isotropic_mutual_info_depolarizing(p)))
    for th in (np.pi / 8, np.pi / 6):
        print("H2(cos^2)", repr(binary_entropy(np.cos(th) ** 2)))
    print("dephasing p=0.2 father bounds:", dephased_bell_father_bounds(0.2))
