"""Independent reference implementations used to cross-check the library."""
from fractions import Fraction
from math import factorial


def word_of(index):
    """D^(I) as (coefficient, word) in the free algebra: D^(I) = D_1^{i_1}.../I!."""
    coef = Fraction(1)
    word = []
    for k, e in enumerate(index):
        coef /= factorial(e)
        word += [k] * e
    return coef, tuple(word)


def straighten(words, bracket):
    """Rewrite {word: c} to ordered words using yx = xy - [x, y] for x < y."""
    out = {}
    todo = dict(words)
    while todo:
        w, c = todo.popitem()
        for p in range(len(w) - 1):
            if w[p] > w[p + 1]:
                y, x = w[p], w[p + 1]
                swapped = w[:p] + (x, y) + w[p + 2:]
                todo[swapped] = todo.get(swapped, 0) + c
                for k, d in bracket.get((y, x), {}).items():
                    shorter = w[:p] + (k,) + w[p + 2:]
                    todo[shorter] = todo.get(shorter, 0) + c * d
                break
        else:
            out[w] = out.get(w, 0) + c
        todo = {k: v for k, v in todo.items() if v}
    return {k: v for k, v in out.items() if v}


def words_to_pbw(words, dim):
    """Ordered words back to divided-power coefficients."""
    out = {}
    for w, c in words.items():
        index = [0] * dim
        for k in w:
            index[k] += 1
        scale = 1
        for e in index:
            scale *= factorial(e)
        key = tuple(index)
        out[key] = out.get(key, 0) + c * scale
    return {k: v for k, v in out.items() if v}


def naive_product(alg, left, right):
    """Product of two PBW monomials by naive rewriting in the free algebra."""
    a, u = word_of(left)
    b, v = word_of(right)
    return words_to_pbw(straighten({u + v: a * b}, alg.bracket), alg.dim)


def naive_antipode(alg, index):
    """S on a monomial: reverse the word and negate each letter."""
    c, w = word_of(index)
    sign = -1 if len(w) % 2 else 1
    return words_to_pbw(straighten({tuple(reversed(w)): c * sign}, alg.bracket), alg.dim)
