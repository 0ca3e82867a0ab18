import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

# graph searches are CPU-bound and variable; wall-clock deadlines flake
settings.register_profile(
    "oddhex",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("oddhex")

sys.path.insert(0, str(Path(__file__).resolve().parent))
