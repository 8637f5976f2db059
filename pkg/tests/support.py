"""Helpers shared by several test modules."""

# every CLI command, with fixed seeds where randomness is involved
CLI_COMMANDS = [
    ["validate", "l31", "s3", "block"],
    ["invariants", "l31", "s1s2", "block"],
    ["present", "l31", "p3"],
    ["admissible", "s1s2", "block"],
    ["generators", "block", "--list"],
    ["wind", "s1s2"],
    ["cover", "s1s2", "--class", "1", "--sheets", "3"],
    ["reduce", "block"],
    ["random", "--genus", "2", "--budget", "4", "--seed", "18446744073709551615"],
    ["random", "--genus", "3", "--points", "2", "--budget", "6", "--free-handles", "1", "--seed", "7"],
    ["bounds", "--k", "3,3", "--b1", "1"],
    ["bounds", "block", "--length", "2", "--degree", "3"],
    ["tube", "--depth", "0.8813735870195430", "--systole", "2"],
    ["geom", "--vol-w", "1", "--total-vol", "1", "--systole", "inf", "--Dmu", "1.5", "--genus", "3", "--wrists", "2,3"],
    ["penner", "--n", "1"],
    ["penner", "--n", "5", "--genus", "3", "--w-inf", "2", "--vol-inf", "1", "--vol-cusped", "2.03"],
    ["transform", "1.0986", "--multiple", "3"],
]


def untouched_alphas_match(d, out, rep):
    """alpha curves after the first b keep exactly their old crossings, in order
    and against the same beta curves."""
    for j in range(rep.b, len(d.alphas)):
        old = d.alphas[rep.relabeling[j]]
        new = out.alphas[j]
        before = [rep.vertex_map[v] for v in d.curve_vertices(old.id)]
        after = out.curve_vertices(new.id)
        if len(before) != len(after):
            return False
        if before:
            i = after.index(before[0])
            if after[i:] + after[:i] != before:
                return False
        beta_before = [d.curve_map[d.vertex_map[v].beta].index for v in d.curve_vertices(old.id)]
        beta_after = [out.curve_map[out.vertex_map[v].beta].index for v in before]
        if beta_before != beta_after:
            return False
    return True
