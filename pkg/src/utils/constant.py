# Exit codes
EXIT_VALID = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

HTTP_STATUS = {
    EXIT_VALID: 200,
    EXIT_COUNTEREXAMPLE: 200,
    EXIT_USAGE: 400,
    EXIT_RESOURCE: 413,
}

# Verdicts
VALID = "valid"
COUNTEREXAMPLE = "counterexample"
VALID_UP_TO_BOUND = "valid-up-to-bound"
INCONCLUSIVE = "inconclusive"

# Negation policies
POLICY_STANDARD = "standard"
POLICY_ALGEBRAIC = "algebraic"

# Output formats
FORMAT_TEXT = "text"
FORMAT_JSON = "json"

# Relations used as memo keys
MEMBER = "in"
EQUAL = "eq"

# Messages
ALGEBRA_VALID = "Algebra satisfies all generalized Heyting algebra laws."
ALGEBRA_INVALID = "Algebra violates generalized Heyting algebra laws."
STRUCTURE_VALID = "Structure satisfies both Fidel conditions."
STRUCTURE_INVALID = "Structure violates the Fidel conditions."
STRUCTURE_REFUSED = "Structure fails the Fidel conditions and cannot be evaluated."
PROCESSING_ERROR = "Error processing the request."
USAGE_ERROR = "Invalid input."

# Axiom labels, in report order
AXIOMS = (
    "extensionality",
    "pairing",
    "collection",
    "powerset",
    "separation",
    "empty-set",
    "union",
    "infinity",
    "induction",
)

# Propositional schema labels
SCHEMAS = ("a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10", "l")

# Quantifier kinds
FORALL = "forall"
EXISTS = "exists"
