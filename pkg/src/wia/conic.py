"""Nontrivial integer zeros of a*x^2 + b*y^2 + c*z^2 (Legendre's equation).

This is the witness engine behind Witt decomposition.  Callers hold a prior
local-global proof of solvability; every solution produced here is verified
exactly before being returned, so a failure surfaces as None (or an
exception upstream), never as a wrong vector.

Method: classical Lagrange descent on the largest coefficient, with a
Holzer-bounded exhaustive search as the base case.  Holzer's theorem
guarantees a solvable reduced equation has a solution with
|x| <= sqrt|bc|, |y| <= sqrt|ac|, |z| <= sqrt|ab|, which makes the base
case complete.
"""

from __future__ import annotations

import math

from sympy.ntheory.residue_ntheory import sqrt_mod

from .exactnum import factorization, square_part_root, squarefree_part

_BRUTE_MAX = 256
_MAX_DEPTH = 300


def _sqrt_mod_squarefree(a: int, n: int):
    """Root of x^2 = a mod squarefree n via CRT over the cached
    factorization (sympy's composite path would refactor n every call)."""
    if n == 1:
        return 0
    residues = []
    moduli = []
    for p, _ in factorization(n):
        r = sqrt_mod(a % p, p)
        if r is None:
            return None
        residues.append(r)
        moduli.append(p)
    x = 0
    m = 1
    for r, p in zip(residues, moduli):
        # lift x from mod m to mod m*p
        diff = (r - x) % p
        inv = pow(m % p, -1, p) if p > 1 else 0
        x += m * ((diff * inv) % p)
        m *= p
    return x % n


def _verify(a: int, b: int, c: int, sol) -> bool:
    x, y, z = sol
    return (x, y, z) != (0, 0, 0) and a * x * x + b * y * y + c * z * z == 0


def _primitive(sol):
    g = math.gcd(math.gcd(abs(sol[0]), abs(sol[1])), abs(sol[2]))
    x, y, z = (v // g for v in sol)
    for v in (x, y, z):
        if v != 0:
            if v < 0:
                x, y, z = -x, -y, -z
            break
    return (x, y, z)


def _brute(a: int, b: int, c: int):
    """Exhaustive search within Holzer bounds; complete for solvable input."""
    bx = math.isqrt(abs(b * c)) + 1
    by = math.isqrt(abs(a * c)) + 1
    bz = math.isqrt(abs(a * b)) + 1
    # enumerate the two cheapest coordinates, solve for the third
    bounds = sorted(((bx, 0), (by, 1), (bz, 2)), reverse=True)
    solve_idx = bounds[0][1]
    (b1, i1), (b2, i2) = bounds[1], bounds[2]
    coeff = [a, b, c]
    cs = coeff[solve_idx]
    for u in range(b1 + 1):
        for v in range(b2 + 1):
            if u == 0 and v == 0:
                continue
            rest = coeff[i1] * u * u + coeff[i2] * v * v
            num = -rest
            if num == 0:
                w = 0
            else:
                if num % cs:
                    continue
                q = num // cs
                if q < 0:
                    continue
                w = math.isqrt(q)
                if w * w != q:
                    continue
            sol = [0, 0, 0]
            sol[i1], sol[i2], sol[solve_idx] = u, v, w
            return tuple(sol)
    return None


def _solve(a: int, b: int, c: int, depth: int):
    if depth > _MAX_DEPTH:
        return _brute(a, b, c)

    # squarefree reduction, coefficient by coefficient
    for i, v in enumerate((a, b, c)):
        m = square_part_root(abs(v))
        if m > 1:
            coeffs = [a, b, c]
            coeffs[i] = v // (m * m)
            sub = _solve(*coeffs, depth + 1)
            if sub is None:
                return None
            sol = list(sub)
            sol = [w * m for w in sol]
            sol[i] = sub[i]
            return tuple(sol)

    # pairwise coprime reduction: g | a, g | b  =>  solve (a/g, b/g, c*g)
    for (i, j, k) in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
        coeffs = [a, b, c]
        g = math.gcd(abs(coeffs[i]), abs(coeffs[j]))
        if g > 1:
            coeffs[i] //= g
            coeffs[j] //= g
            coeffs[k] *= g
            sub = _solve(*coeffs, depth + 1)
            if sub is None:
                return None
            sol = list(sub)
            sol[k] *= g
            return tuple(sol)

    if a > 0 and b > 0 and c > 0 or a < 0 and b < 0 and c < 0:
        return None

    # immediate zeros from a cancelling pair or a square ratio
    if a + b == 0:
        return (1, 1, 0)
    if a + c == 0:
        return (1, 0, 1)
    if b + c == 0:
        return (0, 1, 1)
    for prod, sol_of_t in (
        (-a * b, lambda t: (t, a, 0)),
        (-a * c, lambda t: (t, 0, a)),
        (-b * c, lambda t: (0, t, b)),
    ):
        if prod >= 0:
            t = math.isqrt(prod)
            if t * t == prod:
                return sol_of_t(t)

    if max(abs(a), abs(b), abs(c)) <= _BRUTE_MAX:
        return _brute(a, b, c)

    # descent on the largest coefficient
    order = sorted(range(3), key=lambda i: abs((a, b, c)[i]))
    sa, sb, sc = ((a, b, c)[i] for i in order)
    t = _sqrt_mod_squarefree(-sa * sb, abs(sc))
    if t is None:
        return None
    if t > abs(sc) // 2:
        t -= abs(sc)
    d = (t * t + sa * sb) // sc
    if d == 0:
        # -sa*sb = t^2, already handled above; kept for safety
        sub = (t, sa, 0)
    else:
        m = square_part_root(abs(d))
        d1 = d // (m * m)
        if abs(d1) >= abs(sc):
            sub3 = _brute(sa, sb, sc)
            if sub3 is None:
                return None
            sol = [0, 0, 0]
            for pos, i in enumerate(order):
                sol[i] = sub3[pos]
            return tuple(sol)
        lower = _solve(sa, sb, d1, depth + 1)
        if lower is None:
            return None
        lx, ly, lz = lower
        sub = (t * lx + sb * ly, t * ly - sa * lx, d1 * m * lz)
    sol = [0, 0, 0]
    for pos, i in enumerate(order):
        sol[i] = sub[pos]
    return tuple(sol)


def solve_ternary(a: int, b: int, c: int):
    """A primitive nontrivial (x, y, z) with a x^2 + b y^2 + c z^2 = 0,
    or None if there is none."""
    if a == 0 or b == 0 or c == 0:
        raise ValueError("coefficients must be nonzero")
    sol = _solve(a, b, c, 0)
    if sol is None:
        return None
    if not _verify(a, b, c, sol):
        return None
    return _primitive(sol)
