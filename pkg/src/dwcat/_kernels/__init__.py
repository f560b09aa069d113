"""Dispatch between the compiled kernel extension and the numpy fallback.

Set ``DWCAT_PURE=1`` to force the fallback even when the extension built.
Both backends implement the same functions with identical outputs.
"""

import os

if os.environ.get("DWCAT_PURE") == "1":
    from . import _pure as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pure as _impl

from . import _pure


def backend_name() -> str:
    return _impl.BACKEND


cocycle_defects = _impl.cocycle_defects
tau_table = _impl.tau_table
gamma_table = _impl.gamma_table
tau_associativity_defects = _impl.tau_associativity_defects
gamma_multiplicativity_defects = _impl.gamma_multiplicativity_defects
gamma_tau_defects = _impl.gamma_tau_defects
braiding_compatibility_defects = _impl.braiding_compatibility_defects
inverse_braiding_compatibility_defects = _impl.inverse_braiding_compatibility_defects
ribbon_defects = _impl.ribbon_defects
