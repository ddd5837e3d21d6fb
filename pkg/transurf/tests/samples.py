"""Worked surfaces and parametrizations shared by the tests."""

from functools import lru_cache

from transurf.errors import RetryCapExhausted
from transurf.genlab import InstanceSpec, random_instance


# paraboloid-like quadric, translational under (1, 1, 1)
QUADRIC = "x3+5*x1^2-6*x1*x2+2*x2^2"
QUADRIC_CANONICAL = "5*x1^2-6*x1*x2+2*x2^2+x3"
QUADRIC_P1 = "t1,(4*t1+1)/2,-(2*t1^2+2*t1+1)/2"
QUADRIC_P2 = "t2,t2,-t2^2+t2"

# degree 7, C1 found with (0, 0, 1)
SEPTIC = (
    "2*x1*x3^3*x2-2*x1*x3^2*x2-3*x1*x3*x2+4*x1^2*x3*x2+10*x3^2*x2+5*x1*x2+2*x1*x3^5"
    "-x3^3*x2^2+x3^3*x1^3+2*x3^5*x2-x1^3*x2-4*x1^2*x3^4-x3^7-6*x2^2+x1^3-x1^2-8*x3^4"
    "-2*x3^5-15*x3^2-x3^3+x2^3+12*x2+5*x1*x3^2+9*x3^3*x1-4*x1^2*x3+2*x3^3*x2-2*x1*x2^2"
    "+x1^2*x2+6*x3*x1+4*x3*x2-x3^3*x1^2-11*x3-2*x1-3*x1^2*x3^2+x3^4*x2-2*x3^2*x2^2-9"
)
SEPTIC_P1 = "t1,(1+t1^2)/t1^2,1/t1"
SEPTIC_P2 = "t2^2,t2^3,t2"

QUARTIC = "x1^4-2*x3+7*x3*x1+2*x2^2-5*x2*x3+x3^2+2*x1^3-10*x1^2*x2-2*x3*x1^2+7*x1*x2^2-x2^3"
# pair found with (1, 0, 0)
QUARTIC_P1 = "t1,t1,t1^2"
QUARTIC_P2 = "t2,t2^2,t2^3"
# pair found with (0, 0, 1), also valid under (1, 1, 1)
QUARTIC_Q1 = "t1,t1-1/4,3/8-t1+t1^2"
QUARTIC_Q2 = "t2,t2+t2^2,3/4*t2+3/2*t2^2+t2^3"
# same curves, with P2 moved to vanish at t2 = -1/2
QUARTIC_SHIFTED_P1 = "t1-1/2,t1-1/2,(t1-1/2)^2"
QUARTIC_SHIFTED_P2 = "t2+1/2,(t2+1/2)^2,(t2+1/2)^3"
# singular curve of the quartic: f and its gradient vanish along it
QUARTIC_SINGULAR = "t1,3*t1-2,t1^2+4*t1-4"

CYLINDER = "x1^2+x2^2-1"
PLANE = "x1+2*x2+x3+4"
SPHERE = "x1^2+x2^2+x3^2-1"


@lru_cache(maxsize=None)
def random_instances(count: int = 20, first_seed: int = 300) -> tuple:
    """(seed, f, sp) of generated instances; seeds that exhaust their retries are skipped."""
    out = []
    for seed in range(first_seed, first_seed + count):
        try:
            f, sp = random_instance(InstanceSpec(seed=seed, degree1=2, degree2=2))
        except RetryCapExhausted:
            continue
        out.append((seed, f, sp))
    return tuple(out)
