"""High-precision reference values frozen into the C++ unit tests.

Every value here is evaluated directly from its defining formula (or, for
the ladder cells, from a nodal solve of the explicit circuit) with mpmath at
40 significant digits. The C++ implementation is never consulted.

    python3 tests/oracles/high_precision.py
"""
import mpmath as mp

mp.mp.dps = 40

R = mp.mpf("2.5e-3")
L = mp.mpf("1.8e-6")
G = mp.mpf("20e-6")
C = mp.mpf("0.2e-9")
omega = 4600 * mp.pi
s = mp.mpc(0, omega)
Z0 = mp.mpf(500)


def show(name, z):
    print(f"{name}: {mp.nstr(mp.re(z), 25)} {mp.nstr(mp.im(z), 25)}")


series = R + s * L
shunt = G + s * C
gamma = mp.sqrt(series * shunt)
zc = mp.sqrt(series / shunt)
mu = (Z0 - zc) / (Z0 + zc)
show("gamma", gamma)
show("zc", zc)
show("mu", mu)


def ladder_nodal(n, dx):
    """Solve the n-cell two-rail ladder driven by 1 V at the transmitter.

    Unknowns are top-rail node voltages t1..tn and bottom-rail voltages
    b1..bn (t0 = 1, b0 = 0). Each rail segment is r + l*s with r = R dx/2,
    l = L dx/2; each shunt is G dx + C dx s; zOut sits across the last node.
    Returns per-node (Z_g, H_g) with Z_g = V_g / I_g where I_g is the
    current leaving node g toward the receiver.
    """
    z_rail = R * dx / 2 + L * dx / 2 * s
    y_shunt = G * dx + C * dx * s
    size = 2 * n
    A = mp.matrix(size, size)
    b = mp.matrix(size, 1)

    def top(g):
        return g - 1

    def bot(g):
        return n + g - 1

    for g in range(1, n + 1):
        # KCL at top node g: (t_{g-1}-t_g)/z - (t_g-b_g)*y - (t_g-t_{g+1})/z [- (t_n-b_n)/Z0] = 0
        for (node, sign, other) in ((top, 1, None), (bot, -1, None)):
            row = node(g)
            # current in from previous rail node
            A[row, node(g)] += -1 / z_rail
            if g - 1 >= 1:
                A[row, node(g - 1)] += 1 / z_rail
            elif node is top:
                b[row] -= 1 / z_rail  # t0 = 1
            # b0 = 0 contributes nothing
            if g + 1 <= n:
                A[row, node(g + 1)] += 1 / z_rail
                A[row, node(g)] += -1 / z_rail
            # shunt (and load at the last node) from top to bottom
            y = y_shunt + (1 / Z0 if g == n else 0)
            A[row, top(g)] += -sign * y
            A[row, bot(g)] += sign * y
    x = mp.lu_solve(A, b)
    V = [mp.mpc(1)] + [x[top(g)] - x[bot(g)] for g in range(1, n + 1)]
    # current leaving node g toward the receiver flows through rail segment g+1
    I = []
    for g in range(0, n):
        t_here = mp.mpc(1) if g == 0 else x[top(g)]
        I.append((t_here - x[top(g + 1)]) / z_rail)
    I.append(V[n] / Z0)
    return [(V[g] / I[g], V[n] / V[g]) for g in range(n + 1)]


for n in (1, 2):
    resp = ladder_nodal(n, mp.mpf(10))
    for g, (Z, H) in enumerate(resp):
        show(f"ladder n={n} dx=10 node {g} Z", Z)
        show(f"ladder n={n} dx=10 node {g} H", H)
