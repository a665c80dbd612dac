import numpy as np
import pytest

import rieszeq


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger JIT compilation once so timed tests measure steady-state."""
    p = rieszeq.RieszParams(10, 2.0)
    rieszeq.h_eval_lambda(p, 0.5)
    rieszeq.h_eval_lambda(p, 2.0, 1)
    rieszeq.hyp3f2_log_kernel(4, 0.5)
    rieszeq.kernel_matrix(p, np.linspace(0.5, 1.5, 50))
    rieszeq.particle_equilibrium_solve(rieszeq.RieszParams(4, 0.5),
                                       rieszeq.PowerLaw(1.0, 4.0), 8,
                                       max_iters=3, seed=0)
    yield
