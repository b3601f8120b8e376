"""Application configuration."""
import os
from dotenv import load_dotenv

load_dotenv()

# Spectral tolerances
DEGENERACY_TOL = float(os.getenv("PST_DEGENERACY_TOL", "1e-8"))  # eigenvalues closer than this form one cluster
SPECTRAL_TOL = float(os.getenv("PST_SPECTRAL_TOL", "1e-10"))  # orthonormality / reconstruction residual

# Certification
RATIONAL_TOL = float(os.getenv("PST_RATIONAL_TOL", "1e-9"))
MAX_DENOMINATOR = int(os.getenv("PST_MAX_DENOMINATOR", "1000000"))
CERTIFY_FIDELITY = 1 - 1e-8  # dynamic cross-check on every certified time

# Path scans
SCAN_BOX = float(os.getenv("PST_SCAN_BOX", "3.0"))
SCAN_T_MAX = float(os.getenv("PST_SCAN_T_MAX", "100.0"))
SCAN_THRESHOLD = 1 - 1e-6

# Twin synthesis
TARGET_RADIUS = float(os.getenv("PST_TARGET_RADIUS", "0.02"))
SYNTH_D_MAX = int(os.getenv("PST_SYNTH_D_MAX", "51"))
SYNTH_SEEDS = int(os.getenv("PST_SYNTH_SEEDS", "64"))
SYNTH_SCALE = float(os.getenv("PST_SYNTH_SCALE", "10.0"))
SYNTH_FIDELITY = 1 - 1e-6
NEWTON_TOL = float(os.getenv("PST_NEWTON_TOL", "1e-11"))
NEWTON_MAX_ITER = int(os.getenv("PST_NEWTON_MAX_ITER", "60"))

# Output
FLOAT_DIGITS = 12  # significant digits in JSON and CSV output
LOG_LEVEL = os.getenv("PST_LOG_LEVEL", "WARNING").upper()
