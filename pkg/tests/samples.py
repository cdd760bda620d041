"""Worked examples shared by several test modules."""

X = "abacdacdababacdacdab"

# (code text, sip) for the string itself and six codes of it
SAMPLE_CODES = [
    ("a b a c d a c d a b a b a c d a c d a b", 20),
    ("a b 2*(acd) S[(a)(b),(a)] 2*(cda) b", 14),
    ("<(aba)>/<(cdacd)(bacdacdab)>", 20),
    ("<(S[(a),(b)])>/<(S[(cd),(a)])(S[(b)(a)(cd),(a)])>", 15),
    ("S[(ab)(acd)(acd)(ab)]", 14),
    ("S[S[((ab))((acd))]]", 7),
    ("2*(<(a)>/<S[((b))((cd))]>)", 8),
]

MIRROR_SAME = "ababfababbabafbaba"
MIRROR_APART = "ababfababbabafabab"
AKAG = "akagakakag"
TWO_SUBGRAPHS = "ababfdedgpfdedgbaba"

# hyperstring whose source-to-sink paths spell abcfabcg, xcfxcg and ayfayg
ALTERNATION_EDGES = [
    (1, 2, "a"), (2, 3, "b"), (3, 4, "c"), (4, 5, "f"),
    (5, 6, "a"), (6, 7, "b"), (7, 8, "c"), (8, 9, "g"),
    (1, 3, "x"), (2, 4, "y"), (5, 7, "x"), (6, 8, "y"),
]


def nested(depth: int, alphabet: str = "abcdefgh") -> str:
    """Symmetry nested inside symmetry: x -> x + c + reversed(x)."""
    x = alphabet[0]
    for k in range(1, depth + 1):
        x = x + alphabet[k] + x[::-1]
    return x
