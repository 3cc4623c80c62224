"""Kernel dispatch: compiled extension if importable, NumPy otherwise.

Set ``SIMPART_PURE=1`` in the environment to force the fallback (used by
the benchmark and by tests that compare the two implementations).
"""

import os

if os.environ.get("SIMPART_PURE") == "1":
    from simpart._kernels import _purepy as _impl

    COMPILED = False
else:
    try:
        from simpart._kernels import _fastcore as _impl  # type: ignore[attr-defined]

        COMPILED = True
    except ImportError:
        from simpart._kernels import _purepy as _impl

        COMPILED = False

zeta_inplace = _impl.zeta_inplace
mobius_inplace = _impl.mobius_inplace
mle_rows = _impl.mle_rows
reduced_rows = _impl.reduced_rows
candidate_sums = _impl.candidate_sums
