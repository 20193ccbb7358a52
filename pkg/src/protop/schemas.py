"""JSON Schemas for the CLI's ``--json`` documents."""

WORD = {"oneOf": [{"type": "string"}, {"type": "array", "items": {"type": "integer"}}]}
WORDS = {"type": "array", "items": WORD}
OPT_INT = {"type": ["integer", "null"]}

AUTOMATON = {
    "type": "object",
    "required": ["rank", "num_vertices", "base", "edges"],
    "properties": {
        "rank": {"type": "integer", "minimum": 0},
        "num_vertices": {"type": "integer", "minimum": 1},
        "base": {"const": 0},
        "edges": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer"}, "minItems": 3, "maxItems": 3},
        },
    },
    "additionalProperties": False,
}

QUOTIENT_SUMMARY = {
    "type": "object",
    "required": ["order", "derived_series", "derived_length", "generator_images"],
    "properties": {
        "order": {"type": "integer"},
        "derived_series": {"type": "array", "items": {"type": "integer"}},
        "derived_length": OPT_INT,
        "generator_images": {"type": "array", "items": {"type": "string"}},
    },
}

CLOSURE = {
    "type": "object",
    "required": ["topology", "rank", "generators", "finitely_generated", "index",
                 "invariant_factors", "free_rank", "basis", "automaton"],
    "properties": {
        "topology": {"type": "string"},
        "rank": {"type": "integer"},
        "generators": WORDS,
        "finitely_generated": {"type": "boolean"},
        "index": OPT_INT,
        "invariant_factors": {"type": "array", "items": {"type": "integer", "minimum": 2}},
        "free_rank": {"type": "integer", "minimum": 0},
        "basis": {"oneOf": [WORDS, {"type": "null"}]},
        "automaton": {"oneOf": [AUTOMATON, {"type": "null"}]},
    },
}

META_VERDICT = {
    "type": "object",
    "required": ["status", "word", "subgroup_basis", "factorization", "residue", "certificate", "report"],
    "properties": {
        "status": {"enum": ["member", "nonmember", "exhausted"]},
        "word": WORD,
        "subgroup_basis": WORDS,
        "factorization": {"oneOf": [{"type": "array", "items": {"type": "integer"}}, {"type": "null"}]},
        "residue": {"oneOf": [WORD, {"type": "null"}]},
        "certificate": {"oneOf": [{"type": "null"}, {
            "type": "object",
            "required": ["automaton", "index", "core_quotient"],
            "properties": {"automaton": AUTOMATON, "index": {"type": "integer"},
                           "core_quotient": QUOTIENT_SUMMARY},
        }]},
        "report": {"type": "object"},
    },
}

PAPER_META = {
    "type": "object",
    "required": ["G", "G_index", "HGprime_index", "claimed_index", "candidates", "notes"],
    "properties": {
        "G": CLOSURE,
        "G_index": OPT_INT,
        "HGprime_index": OPT_INT,
        "claimed_index": OPT_INT,
        "candidates": {"oneOf": [{"type": "null"}, {"type": "array", "items": {
            "type": "object", "required": ["automaton", "basis"],
            "properties": {"automaton": AUTOMATON, "basis": WORDS}}}]},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}

VALIDATED_META = {
    "type": "object",
    "required": ["status", "reason", "paper_result", "certificates"],
    "properties": {
        "status": {"enum": ["verified", "contradicted", "unverified"]},
        "reason": {"type": "string"},
        "paper_result": PAPER_META,
        "certificates": {"type": "array", "items": META_VERDICT},
    },
}

PLAIN_MEMBER = {
    "type": "object",
    "required": ["topology", "word", "member"],
    "properties": {"topology": {"type": "string"}, "word": WORD, "member": {"type": "boolean"}},
}

COMMAND_SCHEMAS = {
    "stallings": {"type": "object", "required": ["automaton"], "properties": {"automaton": AUTOMATON}},
    "member": {"oneOf": [PLAIN_MEMBER, {"allOf": [META_VERDICT, {
        "type": "object", "required": ["topology"], "properties": {"topology": {"const": "meta"}}}]}]},
    "basis": {"type": "object", "required": ["basis", "rank"],
              "properties": {"basis": WORDS, "rank": {"type": "integer"}}},
    "index": {"type": "object", "required": ["index"], "properties": {"index": OPT_INT}},
    "intersect": {"type": "object", "required": ["automaton", "basis"],
                  "properties": {"automaton": AUTOMATON, "basis": WORDS}},
    "core": {"type": "object", "required": ["automaton", "index", "transversal"],
             "properties": {"automaton": AUTOMATON, "index": {"type": "integer"}, "transversal": WORDS}},
    "overgroups": {"type": "object", "required": ["overgroups"],
                   "properties": {"overgroups": {"type": "array", "items": AUTOMATON}}},
    "subgroups-of-index": {"type": "object", "required": ["index", "count", "subgroups"],
                           "properties": {"index": {"type": "integer"}, "count": {"type": "integer"},
                                          "subgroups": {"type": "array", "items": AUTOMATON}}},
    "schreier-basis": {"type": "object", "required": ["oracle", "radius", "num_vertices", "chunks", "basis"],
                       "properties": {"oracle": {"type": "string"}, "radius": {"type": "integer"},
                                      "num_vertices": {"type": "integer"},
                                      "chunks": {"type": "array", "items": WORDS}, "basis": WORDS,
                                      "factorization": {"type": "array", "items": {"type": "integer"}}}},
    "closure": {"oneOf": [
        CLOSURE,
        {"allOf": [VALIDATED_META, {"type": "object", "required": ["topology", "method"]}]},
        {"allOf": [PAPER_META, {"type": "object", "required": ["topology", "method"],
                                "properties": {"method": {"const": "paper"}}}]},
        {"type": "object", "required": ["k", "kind", "statement"],
         "properties": {"kind": {"const": "lower-bound-only"}}},
    ]},
    "is-closed": {"type": "object", "required": ["pseudovariety", "verdict", "route", "core_quotient"],
                  "properties": {"verdict": {"type": "boolean"},
                                 "route": {"enum": ["infinite-index-shortcut", "core-quotient-check",
                                                    "profinite-trivial"]},
                                 "core_quotient": {"oneOf": [QUOTIENT_SUMMARY, {"type": "null"}]}}},
    "is-dense": {"type": "object", "required": ["pseudovariety", "dense"],
                 "properties": {"dense": {"oneOf": [{"type": "boolean"}, {"const": "exhausted"}]}}},
    "snf": {"type": "object", "required": ["factors", "U", "S", "V"],
            "properties": {k: {"type": "array"} for k in ("factors", "U", "S", "V")}},
    "validate-meta": VALIDATED_META,
}
