"""
Text templates for human-readable reports
"""

USAGE_DESCRIPTION = """
Sutured Floer homology and the contact class EH from partial open books.

Input files describe either a partial open book (mode pob) or a sutured
Heegaard diagram given by its curves (mode diagram).
"""

# Verdicts
EH_ZERO = "EH = 0; homology dim {dimension}"
EH_NONZERO = "EH != 0; homology dim {dimension}"
EH_GENERATOR = "distinguished generator {label}"
EH_COORDINATES = "coordinates in the homology basis: {coordinates}"

VALID_POB = "valid partial open book: {polygons} polygons, r = {r}, monodromy {kind}"
VALID_DIAGRAM = "valid diagram: {polygons} polygons, {curves} alpha curves"
CENSUS = "V={vertices} E={edges} F={faces} chi={chi} components={components} genus={genus} boundary={boundary}"

BUILD_SUMMARY = (
    "Sigma: {polygons} polygons, genus {genus}, {boundary} boundary components; "
    "{alphas} alpha / {betas} beta curves, {points} points, {regions} regions ({interior} interior)"
)

NICE = "nice: every interior region is a bigon or a square"
NOT_NICE = "not nice: interior regions {regions}"

GENERATOR_COUNT = "{count} generators"

ADMISSIBLE = "weakly admissible (periodic domains: rank {rank})"
NOT_ADMISSIBLE = "NOT weakly admissible (periodic domains: rank {rank})"

DIFFERENTIAL_SUMMARY = "{count} generators, {relations} nonzero boundaries, count mode {mode}"
RELATION = "d{source} = {targets}"

HOMOLOGY = "homology dim {dimension} ({variant})"
CLASS_DIMENSIONS = "per Spin^c class: {dimensions}"

SPINC_SUMMARY = "{count} Spin^c classes, sizes {sizes}"
SPINC_CLASS = "class {index}: {size} generators, homology dim {dimension}"

RIGHT_VEERING = "right-veering on the supplied arcs"
LEFT_VEERING = "not right-veering: {arcs} turn left, so EH = 0"
ARC_VEERING = "{arc}: start {start}, end {end}"

MOVE_SUMMARY = "{move}: dim {before_dim} -> {after_dim}, EH {before_eh} -> {after_eh}"
MOVE_CHANGED = "invariants changed under a move that must preserve them"

GLUE_SUMMARY = "glue check k={k} ({pattern}), pinned {pinned}: dim {sub} -> {big}"
GLUE_CHECKS = "chain map {chain_map}, injective on homology {injective}, block summand {summand}, EH mapped {eh}"
GLUE_PASSED = "✅ inclusion verified"
GLUE_FAILED = "❌ inclusion check failed"

SELFTEST_LINE = "{mark} {instance}: {property}{detail}"
SELFTEST_SUMMARY = "{instances} instances, {checks} checks, {failures} failures"

CRASH = "internal error: {error}"
