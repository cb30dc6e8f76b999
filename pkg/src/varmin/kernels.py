"""Hot numeric kernels shared by the numba and pure-Python backends.

Everything here is written in nopython-compatible style (plain loops,
preallocated arrays, scalar math) so the exact same source runs either
JIT-compiled or interpreted. Both backends therefore produce bit-identical
results; ``VARMIN_NUMBA=0`` selects the interpreted fallback.

PRNG: xoshiro256** seeded via splitmix64, with uniforms mapped to doubles
as ``(word >> 11) * 2**-53`` and normals produced by the polar-free
Box-Muller transform (pairs cached across calls). This generator is the
reproducibility contract: golden values in the tests assume it.

Problem ids used by the dispatchers below:
  0 brachistochrone, 1 restricted (Ramm) brachistochrone,
  2 Newton minimal resistance, 3 thermal (two-sided flux) resistance.
"""

import math
from functools import lru_cache
from types import SimpleNamespace

import numpy as np

from .backend import USE_NUMBA, make_jit

# splitmix64 / xoshiro256** constants
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_U5 = np.uint64(5)
_U9 = np.uint64(9)
_U7 = np.uint64(7)
_U57 = np.uint64(57)
_U17 = np.uint64(17)
_U45 = np.uint64(45)
_U19 = np.uint64(19)
_U30 = np.uint64(30)
_U27 = np.uint64(27)
_U31 = np.uint64(31)
_U11 = np.uint64(11)
_ONE = np.uint64(1)
_TWO_NEG53 = 2.0 ** -53
_TWO_PI = 2.0 * math.pi

BRACH = 0
RAMM = 1
NEWTON = 2
THERMAL = 3


def _build(use_numba):
    jit = make_jit(use_numba)

    # ------------------------------------------------------------------ RNG

    @jit
    def sm64_next(st):
        st[0] = st[0] + _GAMMA
        z = st[0]
        z = (z ^ (z >> _U30)) * _M1
        z = (z ^ (z >> _U27)) * _M2
        return z ^ (z >> _U31)

    @jit
    def xo_seed(seed):
        st = np.empty(1, np.uint64)
        st[0] = seed
        s = np.empty(4, np.uint64)
        for i in range(4):
            s[i] = sm64_next(st)
        return s

    @jit
    def xo_next(s):
        x = s[1] * _U5
        result = ((x << _U7) | (x >> _U57)) * _U9
        t = s[1] << _U17
        s[2] = s[2] ^ s[0]
        s[3] = s[3] ^ s[1]
        s[1] = s[1] ^ s[2]
        s[0] = s[0] ^ s[3]
        s[2] = s[2] ^ t
        s[3] = (s[3] << _U45) | (s[3] >> _U19)
        return result

    @jit
    def gauss_fill(s, gst, out, n, sigma):
        # gst = (has_spare flag, spare value); spare persists across calls
        i = 0
        while i < n:
            if gst[0] > 0.5:
                out[i] = gst[1] * sigma
                gst[0] = 0.0
                i += 1
            else:
                u1 = ((xo_next(s) >> _U11) + _ONE) * _TWO_NEG53
                u2 = (xo_next(s) >> _U11) * _TWO_NEG53
                r = math.sqrt(-2.0 * math.log(u1))
                a = _TWO_PI * u2
                out[i] = r * math.cos(a) * sigma
                i += 1
                gst[0] = 1.0
                gst[1] = r * math.sin(a)

    # ------------------------------------------------------- repair transforms

    @jit
    def pin_ends(y, lo, hi):
        y[0] = lo
        y[y.size - 1] = hi

    @jit
    def clamp_to_arrays(y, lower, upper):
        for i in range(y.size):
            v = y[i]
            if v < lower[i]:
                v = lower[i]
            if v > upper[i]:
                v = upper[i]
            y[i] = v

    @jit
    def clamp_to_consts(y, lower, upper):
        for i in range(y.size):
            v = y[i]
            if v < lower:
                v = lower
            if v > upper:
                v = upper
            y[i] = v

    @jit
    def running_max(y):
        acc = y[0]
        for i in range(1, y.size):
            if y[i] < acc:
                y[i] = acc
            else:
                acc = y[i]

    @jit
    def convex_minorant(y, stack, buf):
        # greatest convex minorant at the nodes of a uniform grid;
        # lower convex hull via a monotone-chain stack, then linear
        # interpolation of hull vertices back onto the nodes
        n = y.size
        m = 0
        for i in range(n):
            while m >= 2:
                i1 = stack[m - 2]
                i2 = stack[m - 1]
                if (y[i2] - y[i1]) * (i - i1) >= (y[i] - y[i1]) * (i2 - i1):
                    m -= 1
                else:
                    break
            stack[m] = i
            m += 1
        for k in range(m - 1):
            i1 = stack[k]
            i2 = stack[k + 1]
            buf[i1] = y[i1]
            slope = (y[i2] - y[i1]) / (i2 - i1)
            for j in range(i1 + 1, i2):
                buf[j] = y[i1] + slope * (j - i1)
        buf[n - 1] = y[n - 1]
        for j in range(n):
            y[j] = buf[j]

    # ----------------------------------------------------------- objectives

    @jit
    def eval_descent(y, dx, g, release):
        # exact per-segment kinematics: constant tangential acceleration on
        # each linear piece, speeds chained by energy conservation; +inf
        # marks an energy-infeasible (stalling) candidate
        v0sq = 2.0 * g * (release - y[0])
        if v0sq < 0.0:
            return math.inf
        vin = math.sqrt(v0sq)
        total = 0.0
        for i in range(y.size - 1):
            dy = y[i] - y[i + 1]
            seg = math.sqrt(dx * dx + dy * dy)
            at = g * dy / seg
            if at == 0.0:
                if vin <= 0.0:
                    return math.inf
                total += seg / vin
            else:
                v2sq = vin * vin + 2.0 * at * seg
                if v2sq < 0.0:
                    return math.inf
                vout = math.sqrt(v2sq)
                total += (vout - vin) / at
                vin = vout
        return total

    @jit
    def eval_ramm_functional(y, dx):
        # integral of sqrt(1+y'^2)/sqrt(1-y) in closed form per segment;
        # the y=1 endpoint singularity integrates to a finite value
        total = 0.0
        for i in range(y.size - 1):
            y1 = y[i]
            y2 = y[i + 1]
            if y1 > 1.0 or y2 > 1.0:
                return math.inf
            m = (y2 - y1) / dx
            if m == 0.0:
                if y1 >= 1.0:
                    return math.inf
                total += dx / math.sqrt(1.0 - y1)
            else:
                total += (
                    2.0
                    * math.sqrt(1.0 + m * m)
                    * (math.sqrt(1.0 - y1) - math.sqrt(1.0 - y2))
                    / m
                )
        return total

    @jit
    def eval_newton(y, dx):
        total = 0.0
        for i in range(y.size - 1):
            x1 = i * dx
            x2 = (i + 1) * dx
            m = (y[i + 1] - y[i]) / dx
            total += (x2 * x2 - x1 * x1) / (2.0 * (1.0 + m * m))
        return total

    @jit
    def flux_front(u):
        return 1.0 / (1.0 + u * u) + 0.5

    @jit
    def flux_rear(u):
        return 0.5 / (1.0 + u * u) - 0.5

    @jit
    def eval_thermal_arrays(front, rear):
        nf = front.size - 1
        nr = rear.size - 1
        dtf = 1.0 / nf
        dtr = 1.0 / nr
        total = 0.0
        for i in range(nf):
            u = (front[i + 1] - front[i]) / dtf
            total += flux_front(u) * dtf
        for i in range(nr):
            u = (rear[i + 1] - rear[i]) / dtr
            total += flux_rear(u) * dtr
        return total

    @jit
    def thermal_decode(genes, h, front, rear):
        # gene layout: front interior heights, rear interior heights, h_plus
        nfn = front.size
        nrn = rear.size
        hp = genes[genes.size - 1]
        front[0] = 0.0
        for i in range(1, nfn - 1):
            front[i] = genes[i - 1]
        front[nfn - 1] = hp
        rear[0] = 0.0
        for i in range(1, nrn - 1):
            rear[i] = genes[nfn - 3 + i]
        rear[nrn - 1] = h - hp

    # ------------------------------------------------------ problem dispatch

    @jit
    def repair_candidate(pid, y, params, upper, iwork, fwork):
        if pid == 0:
            pin_ends(y, params[2], params[3])
        elif pid == 1:
            pin_ends(y, params[2], params[3])
            zeros = fwork[y.size : 2 * y.size]
            for i in range(y.size):
                zeros[i] = 0.0
            clamp_to_arrays(y, zeros, upper)
            convex_minorant(y, iwork, fwork)
            clamp_to_arrays(y, zeros, upper)
        elif pid == 2:
            hgt = params[1]
            pin_ends(y, 0.0, hgt)
            clamp_to_consts(y, 0.0, hgt)
            running_max(y)
            pin_ends(y, 0.0, hgt)
        else:
            h = params[0]
            nf = int(params[1])
            nr = int(params[2])
            hp = y[y.size - 1]
            if hp < 0.0:
                hp = 0.0
            if hp > h:
                hp = h
            y[y.size - 1] = hp
            front = fwork[: nf + 1]
            rear = fwork[nf + 1 : nf + nr + 2]
            thermal_decode(y, h, front, rear)
            clamp_to_consts(front, 0.0, hp)
            running_max(front)
            clamp_to_consts(rear, 0.0, h - hp)
            running_max(rear)
            for i in range(1, nf):
                y[i - 1] = front[i]
            for i in range(1, nr):
                y[nf - 2 + i] = rear[i]

    @jit
    def objective_value(pid, y, params, fwork):
        if pid == 0:
            return eval_descent(y, params[0], params[1], params[4])
        elif pid == 1:
            return eval_descent(y, params[0], params[1], params[4])
        elif pid == 2:
            return eval_newton(y, params[0])
        else:
            h = params[0]
            nf = int(params[1])
            nr = int(params[2])
            front = fwork[: nf + 1]
            rear = fwork[nf + 1 : nf + nr + 2]
            thermal_decode(y, h, front, rear)
            return eval_thermal_arrays(front, rear)

    # ---------------------------------------------------------- ES run loop

    @jit
    def run_loop(pid, chord, mask, params, upper, sigma, lam, iters, seed):
        """(1, lambda)-ES with comma selection and a best-ever archive.

        Returns (best vector, best objective, trace iterations, trace
        objectives). The trace records generation 1, every improvement of
        the archive, and every 100th generation.
        """
        n = chord.size
        s = xo_seed(seed)
        gst = np.zeros(2)
        noise = np.empty(n)
        fwork = np.empty(2 * n + 8)
        iwork = np.empty(n + 2, np.int64)

        # initial candidate: boundary chord plus one sigma-perturbation,
        # then the problem's repair pipeline
        parent = chord.copy()
        gauss_fill(s, gst, noise, n, sigma)
        for i in range(n):
            if mask[i] != 0:
                parent[i] += noise[i]
        repair_candidate(pid, parent, params, upper, iwork, fwork)
        best_f = objective_value(pid, parent, params, fwork)
        best = parent.copy()

        off = np.empty(n)
        gen_best = np.empty(n)
        trace_it = np.empty(iters + 1, np.int64)
        trace_f = np.empty(iters + 1)
        m = 0
        for it in range(1, iters + 1):
            gb_f = math.inf
            for c in range(lam):
                gauss_fill(s, gst, noise, n, sigma)
                for i in range(n):
                    if mask[i] != 0:
                        off[i] = parent[i] + noise[i]
                    else:
                        off[i] = parent[i]
                repair_candidate(pid, off, params, upper, iwork, fwork)
                f = objective_value(pid, off, params, fwork)
                if c == 0 or f < gb_f:
                    gb_f = f
                    for i in range(n):
                        gen_best[i] = off[i]
            # comma selection: previous progenitor never competes
            for i in range(n):
                parent[i] = gen_best[i]
            improved = gb_f < best_f
            if improved:
                best_f = gb_f
                for i in range(n):
                    best[i] = gen_best[i]
            if it == 1 or improved or it % 100 == 0:
                trace_it[m] = it
                trace_f[m] = best_f
                m += 1
        return best, best_f, trace_it[:m].copy(), trace_f[:m].copy()

    return SimpleNamespace(
        use_numba=use_numba,
        sm64_next=sm64_next,
        xo_seed=xo_seed,
        xo_next=xo_next,
        gauss_fill=gauss_fill,
        pin_ends=pin_ends,
        clamp_to_arrays=clamp_to_arrays,
        clamp_to_consts=clamp_to_consts,
        running_max=running_max,
        convex_minorant=convex_minorant,
        eval_descent=eval_descent,
        eval_ramm_functional=eval_ramm_functional,
        eval_newton=eval_newton,
        flux_front=flux_front,
        flux_rear=flux_rear,
        eval_thermal_arrays=eval_thermal_arrays,
        thermal_decode=thermal_decode,
        repair_candidate=repair_candidate,
        objective_value=objective_value,
        run_loop=run_loop,
    )


@lru_cache(maxsize=2)
def get_kernels(use_numba=None):
    if use_numba is None:
        use_numba = USE_NUMBA
    return _build(bool(use_numba))
