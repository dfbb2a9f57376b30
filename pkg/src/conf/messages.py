QUESTION_IN_DFORM = "Question not allowed in declarative context"
NESTING_TOO_DEEP = "Formula nesting too deep"
TOO_FEW_ANSWERS = "Question needs at least two direct answers"
EQUIFORM_ANSWERS = "Question has equiform direct answers"
EMPTY_DEFEATER_MEMBER = "Defeater members must be nonempty"
NON_DECLARATIVE_MEMBER = "Defeater members may only contain declarative formulas"
MISSING_ATOM = "Valuation is not defined for atom"

NON_LITERAL = "non-literal"
SELF_REFERENCE = "self-reference"
INVALID_ASSIGNMENT = "Invalid defeater assignment"
MALFORMED_ASSIGNMENT_LINE = "Expected 'atom : {lit, ...}, ...'"
DUPLICATE_ATOM = "Atom assigned twice"
DEFEATER_FILE_NOT_FOUND = "Defeater file not found"
CONFIG_FILE_NOT_FOUND = "Config file not found"

MALFORMED_PROOF = "Malformed proof document"
UNKNOWN_RULE = "Unknown rule"
PROOF_FILE_NOT_FOUND = "Proof file not found"

ARITY_MISMATCH = "premise count does not match rule arity"
NO_PRINCIPAL = "no principal formula of the required shape"
DEFEATERS_MISMATCH = "defeater set does not match the schema"
ANTECEDENT_MISMATCH = "antecedent does not match the schema"
SUCCEDENT_MISMATCH = "succedent does not match the schema"
WITNESS_MISMATCH = "witness map does not pair implied answers with implying answers"
PROVISO_VIOLATED = "antecedent must contain declarative formulas only"
AXIOM_DEFEATERS = "axiom defeaters are not allowed by the assignment"

NOT_DECLARATIVE = "Sequent contains questions"
DEPTH_EXHAUSTED = "search depth bound reached"
NODES_EXHAUSTED = "search node bound reached"
SPLITS_EXHAUSTED = "candidate enumeration bound reached"

STATUS_AWAITING = "awaiting facts"
STATUS_ANSWERED = "answered"
STATUS_NO_SUBQUESTIONS = "no subquestions"
STATUS_EXHAUSTED = "exhausted"

REPL_HELP = "Enter a fact, or one of :facts, :active, :help, :quit"
UNKNOWN_METACOMMAND = "Unknown metacommand"
