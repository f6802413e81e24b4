"""Default settings and limits."""

# Diffusion simulation
DEFAULT_IC_P = 0.1
DEFAULT_NUM_PAIRS = 50
DEFAULT_SEEDS_PER_PAIR = 1
DEFAULT_MASTER_SEED = 0
SIMULATION_CHUNK = 4096        # runs simulated together in one block graph
MAX_HASH_CELLS = 1 << 22       # per-chunk cap on runs x max(m, n) hash values
MAX_ENUMERATION_EDGES = 20     # 2^m live-edge worlds

# LPSI
DEFAULT_LPSI_ALPHA = 0.5
DEFAULT_LPSI_TOL = 1e-8
DEFAULT_LPSI_MAX_ITER = 1000
MAX_DENSE_SOLVE_NODES = 2000

# NetSleuth
DEFAULT_MAX_SEEDS = 5
DEFAULT_LAMBDA_RIPPLE = 1.0
MAX_DENSE_INFECTED = 5000
DEFAULT_EIG_TOL = 1e-10
DEFAULT_EIG_MAX_ITER = 10000
EIG_SHIFT = -1e-6

# GCNSI
DEFAULT_GCN_HIDDEN = 32
DEFAULT_GCN_LR = 0.01
DEFAULT_GCN_EPOCHS = 200
DEFAULT_GCN_ALPHAS = (0.3, 0.5, 0.7)
DEFAULT_GCN_INIT_SEED = 0

# Benchmark
DEFAULT_SPLIT = 0.8
DEFAULT_THRESHOLD_MODE = "peak"
THRESHOLD_MODES = ("peak", "f1")
DEFAULT_OUTPUT_FORMAT = "json"
OUTPUT_FORMATS = ("json", "csv")
DEFAULT_WORKERS = 1

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2
