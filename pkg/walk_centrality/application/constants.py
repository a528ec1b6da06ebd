# Environment variables
THREADS = "TWC_THREADS"
LOG_LEVEL = "TWC_LOG_LEVEL"
EPSILON = "TWC_EPSILON"
DENSE_CAP = "TWC_DENSE_CAP"
WALK_CAP = "TWC_WALK_CAP"
DIVERGENCE_WINDOW = "TWC_DIVERGENCE_WINDOW"
MAX_ITERATIONS = "TWC_MAX_ITERATIONS"

# Defaults
DEFAULT_THREADS = 1
DEFAULT_LOG_LEVEL = "INFO"
DEFAULT_EPSILON = 1e-9
DEFAULT_DENSE_CAP = 20_000
DEFAULT_WALK_CAP = 10_000_000
DEFAULT_DIVERGENCE_WINDOW = 64
DEFAULT_MAX_ITERATIONS = 100_000

# Spectral radius guard
SPECTRAL_MARGIN = 0.01
SPECTRAL_ITERATIONS = 100
SPECTRAL_AVERAGE_WINDOW = 10

# Timestamps are 64-bit non-negative integers
MAX_TIMESTAMP = 2 ** 63 - 1

# Input format
COMMENT_PREFIX = "#"

# Walk directions
INCOMING = "incoming"
OUTGOING = "outgoing"

# Weight function kinds
ALPHA = "alpha"
TIME = "time"
COMBINED = "combined"
ONE = "one"

# Methods
STREAM = "stream"
EXACT = "exact"
APPROX = "approx"
DAG = "dag"
ORACLE = "oracle"
AUTO = "auto"
METHODS = (STREAM, EXACT, APPROX, DAG, ORACLE, AUTO)

# Centrality modes
TWC = "twc"
KATZ = "katz"
DEGREE_IN = "degree-in"
DEGREE_OUT = "degree-out"
MODES = (TWC, KATZ, DEGREE_IN, DEGREE_OUT)

# Commands
COMPUTE = "compute"
COMPARE = "compare"
DLG_EXPORT = "dlg-export"
STATS = "stats"
ERROR = "error"

# Output
SCORE_DIGITS = 12
SUMMARY_SUFFIX = ".summary.json"
