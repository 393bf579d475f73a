"""scikit-learn compatible wrapper around the batch twin classifier."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .engine import is_prime, odd_prime_mask
from .errors import InvalidPairError
from .twins import classify_arrays, reconstruct_arrays

# above this the primality check falls back to per-element Miller-Rabin
_SIEVE_CHECK_LIMIT = 10**8


def _check_pairs(X, check_primes):
    X = check_array(X, dtype=np.int64)
    if X.shape[1] != 2:
        raise InvalidPairError(f"expected two columns (p_lo, p_hi), got {X.shape[1]}")
    lo, hi = X[:, 0], X[:, 1]
    if np.any(lo < 3) or np.any(lo >= hi):
        raise InvalidPairError("every row needs 3 <= p_lo < p_hi")
    if np.any(lo % 2 == 0) or np.any(hi % 2 == 0):
        raise InvalidPairError("both members of every pair must be odd")
    if check_primes:
        top = int(hi.max())
        if top <= _SIEVE_CHECK_LIMIT:
            mask = odd_prime_mask(3, top)
            ok = mask[(lo - 3) // 2] & mask[(hi - 3) // 2]
        else:
            ok = np.array([is_prime(a) and is_prime(b) for a, b in X.tolist()])
        if not ok.all():
            bad = X[np.flatnonzero(~ok)[0]].tolist()
            raise InvalidPairError(f"{bad} is not a pair of primes")
    return X


class TwinClassifier(TransformerMixin, BaseEstimator):
    """Map prime pairs ``(p_lo, p_hi)`` to ``(class, a, special, D)`` rows.

    ``class`` is 1, 2 or 3, ``a`` is the running parameter (0 for special
    twins) and ``D`` the half-distance. ``inverse_transform`` rebuilds the
    pairs. Nothing is learned; ``fit`` only validates.

    >>> TwinClassifier().fit_transform([[3, 5], [3, 7], [5, 17]]).tolist()
    [[1, 2, 0, 1], [2, 0, 1, 2], [3, 5, 0, 6]]
    """

    def __init__(self, check_primes=True):
        self.check_primes = check_primes

    def fit(self, X, y=None):
        _check_pairs(X, self.check_primes)
        self.n_features_in_ = 2
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = _check_pairs(X, self.check_primes)
        lo, hi = X[:, 0], X[:, 1]
        cls, a, special = classify_arrays(lo, hi)
        return np.column_stack([cls.astype(np.int64), a, special.astype(np.int64), (hi - lo) // 2])

    def inverse_transform(self, Xt):
        check_is_fitted(self, "n_features_in_")
        Xt = check_array(Xt, dtype=np.int64)
        if Xt.shape[1] != 4:
            raise ValueError(f"expected four columns (class, a, special, D), got {Xt.shape[1]}")
        p_lo, p_hi = reconstruct_arrays(Xt[:, 0], Xt[:, 1], Xt[:, 2].astype(bool), Xt[:, 3])
        return np.column_stack([p_lo, p_hi])

    def get_feature_names_out(self, input_features=None):
        return np.array(["class", "a", "special", "half_distance"], dtype=object)
