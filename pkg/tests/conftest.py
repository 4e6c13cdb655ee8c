import pytest

from schroeder import Family, FamilySpec, build_table, enumerate_family


@pytest.fixture(scope="session")
def ss():
    """Cache of the full family per n: ss(n) -> sorted element list."""
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = enumerate_family(FamilySpec(Family.SS_PRIME, n))
        return cache[n]

    return get


@pytest.fixture(scope="session")
def table(ss):
    """Cache of built semigroup tables: table(n) for the full semigroup,
    table(n, p) for the ideal, table(n, p, quotient=True) for the quotient."""
    cache = {}

    def get(n, p=None, quotient=False):
        key = (n, p, quotient)
        if key not in cache:
            if p is None:
                cache[key] = build_table(ss(n), verify=False)
            elif quotient:
                cache[key] = build_table(
                    [a for a in ss(n) if a.height() == p],
                    collapse_below=p,
                    verify=False,
                )
            else:
                cache[key] = build_table(
                    [a for a in ss(n) if a.height() <= p], verify=False
                )
        return cache[key]

    return get
