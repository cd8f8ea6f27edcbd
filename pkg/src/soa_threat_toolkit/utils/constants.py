"""Constants used throughout the SOA threat toolkit."""

# Version of the model, safety and report documents
SCHEMA_VERSION = 1

# Size limit above which the oracle refuses to enumerate
DEFAULT_ORACLE_NODE_BUDGET = 200_000

# Arrow used when rendering element chains
PATH_ARROW = " → "

# Process exit codes
class ExitCode:
    OK = 0
    VIOLATION = 1
    INPUT_ERROR = 2
    INTERNAL_ERROR = 3

# Intruder profiles
class Profile:
    OUTSIDER = "outsider"
    INSIDER = "insider"
    BOTH = "both"

    ALL = (OUTSIDER, INSIDER, BOTH)

# Predicate names of the ground fact base
class Predicate:
    ECUI = "ecui"
    ECUO = "ecuo"
    NETI = "neti"
    NETO = "neto"
    CPI = "cpi"
    CPO = "cpo"
    PUB = "pub"
    SUB = "sub"
    CH = "ch"
    ALLOC = "alloc"
    PUBLIC = "public"
    IF = "if"
    PRO = "pro"

    # Derived judgments
    WRT = "wrt"
    RD = "rd"
    REACH = "reach"
    ATTACK = "attack"

    INPUT = (ECUI, ECUO, NETI, NETO, CPI, CPO, PUB, SUB, CH, ALLOC, PUBLIC, IF, PRO)

# Violation rule names reported by model validation
class ViolationRule:
    DUPLICATE_ID = "duplicate-id"
    DUPLICATE_PORT = "duplicate-port"
    DUPLICATE_TOPIC = "duplicate-topic"
    PORT_OVERLAP = "port-overlap"
    DANGLING_REFERENCE = "dangling-reference"
    CHANNEL_SHAPE = "channel-shape"
    ALLOCATION_DIRECTION = "allocation-direction"
    FLOW_PORT = "flow-port"
    DUPLICATE_ENTRY = "duplicate-entry"

# Marker printed for traceability rows without coverage
GAP_MARKER = "GAP"

# Security property violated by each loss-scenario failure mode
DEFAULT_FAILURE_MODE_PROPERTIES = {
    "erroneous": "integrity",
    "loss": "availability",
    "omission": "availability",
    "late": "availability",
    "early": "availability",
}

# STRIDE threats per (asset kind, property); "*" matches any kind
STRIDE_MAP = {
    ("function", "integrity"): ("tampering",),
    ("hardware", "integrity"): ("tampering",),
    ("topic", "integrity"): ("spoofing", "elevation"),
    ("*", "availability"): ("dos",),
}

# Damage impact by hazard severity
IMPACT_BY_SEVERITY = {
    "S0": "negligible",
    "S1": "moderate",
    "S2": "moderate",
    "S3": "severe",
}
