"""CLI invocations exercised by the test suite."""

K3_ARGS = ["--rank", "2", "--gens-from-quotient", "a=(1 2);b=(1 2 3)", "--preimage", "(1 2)"]

CASES = [
    ["stallings", "--rank", "2", "--gens", "aa,b"],
    ["member", "--rank", "2", "--gens", "aa,b", "--word", "aab"],
    ["member", "--pv", "ab", "--rank", "2", "--gens", "aa,b", "--word", "abA"],
    ["member", "--pv", "ab:3", "--rank", "2", "--gens", "a,bb", "--word", "b"],
    ["member", "--pv", "meta", "--rank", "2", "--gens", "a", "--word", "aBAb"],
    ["member", "--pv", "meta", *K3_ARGS, "--word", "b"],
    ["basis", "--rank", "2", "--gens", "aa,bb,ab"],
    ["index", "--rank", "2", "--gens", "aa,bb,ab"],
    ["index", "--rank", "2", "--gens", "aa,b"],
    ["intersect", "--rank", "2", "--gens", "aa,b", "--gens2", "a,bb"],
    ["core", *K3_ARGS],
    ["overgroups", "--rank", "2", "--gens", "aa,b"],
    ["subgroups-of-index", "--rank", "2", "--index", "3"],
    ["schreier-basis", "--rank", "2", "--gens", "a", "--pv", "ab", "--radius", "2"],
    ["schreier-basis", "--rank", "2", "--gens", "aa,b", "--radius", "5", "--word", "aabAA"],
    ["closure", "--pv", "ab", "--rank", "2", "--gens", "aa,b"],
    ["closure", "--pv", "ab:2", "--rank", "2", "--gens", "a"],
    ["closure", "--pv", "ab", "--rank", "2", "--gens", "a"],
    ["closure", "--pv", "meta", "--method", "paper", *K3_ARGS],
    ["closure", "--pv", "meta", "--method", "validated", *K3_ARGS],
    ["closure", "--pv", "sk:3", "--rank", "2", "--gens", "aa,b"],
    ["is-closed", "--pv", "ab", *K3_ARGS],
    ["is-closed", "--pv", "sk:2", *K3_ARGS],
    ["is-closed", "--pv", "id:[x1,x2];x1^4", "--rank", "2", "--gens", "aa,bb,ab"],
    ["is-closed", "--pv", "meta", "--rank", "2", "--gens", "a"],
    ["is-dense", "--pv", "ab", *K3_ARGS],
    ["is-dense", "--pv", "meta", *K3_ARGS],
    ["is-dense", "--pv", "nilpotent", "--rank", "2", "--gens", "aa,b"],
    ["is-dense", "--pv", "ab:6", "--rank", "2", "--gens", "a,bb"],
    ["snf", "--matrix", "2,4;6,8"],
    ["validate-meta", *K3_ARGS],
    ["validate-meta", "--rank", "2", "--gens", "aa,bb,ab"],
    ["validate-meta", "--rank", "2", "--gens", "a,b"],
]
