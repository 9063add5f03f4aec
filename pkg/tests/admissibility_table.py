"""Hand-enumerated admissibility verdicts, ten per theorem.

Each row is ``(name, kwargs, expected_pass, first_failing_label_fragment)``.
Every verdict follows from the quoted hypotheses by exact arithmetic; the
comment on each row shows the deciding computation.
"""

I = "inf"

CONVOLUTION = [
    # R(p) = R(q) = 0, every sum 0, no strictness triggered
    ("young-classical", dict(p=(I, 1, 1), q=(I, 1, 1)), True, None),
    # R(p) = 1/2: t0+t1+t2 - R(p) = -1/2 < 0
    ("l2-unweighted", dict(p=(2, 2, 2), q=(2, 2, 2)), False, "lastineq2B"),
    # R(p) = 1/2 > 0 and t_j = 1/2 -> strict; 3/2 - 1/2 = 1 > 0
    ("strict-satisfied", dict(p=(2, 2, 2), q=(I, 1, 1), t=("1/2", "1/2", "1/2")), True, None),
    # R(p) = 2 - 3 = -1 < 0
    ("R-negative", dict(p=(1, 1, 1), q=(I, 1, 1)), False, "R(p) >= 0"),
    # R(p) = 2 - 1 = 1 > 1/2
    ("R-too-large", dict(p=(2, 2, I), q=(I, 1, 1), t=(1, 1, 1)), False, "R(p) <= 1/2"),
    # t1 + t2 = -1 < 0
    ("pair-sum-negative", dict(p=(I, 1, 1), q=(I, 1, 1), t=(1, -1, 0)), False, "lastineq2A"),
    # s0+s1+s2 = -1 < 0
    ("s-sum-negative", dict(p=(I, 1, 1), q=(I, 1, 1), s=(1, -2, 0)), False, "lastineq2C"),
    # R(p) = 1/2, no t_j = 1/2 -> not strict; 1/2 - 1/2 = 0 >= 0
    ("boundary-not-strict", dict(p=(2, 2, 2), q=(I, 1, 1), t=("1/4", "1/4", 0)), True, None),
    # R(p) = 1/2, t0 = 1/2 -> strict; 1/2 - 1/2 = 0 is not > 0
    ("boundary-strict", dict(p=(2, 2, 2), q=(I, 1, 1), t=("1/2", 0, 0)), False, "lastineq2B"),
    # d = 2: d R(p) = 1, t sums to 1, no t_j = 1 -> 0 >= 0
    ("dimension-two", dict(p=(2, 2, 2), q=(I, 1, 1), t=("1/2", "1/2", 0), d=2), True, None),
]

WIGNER = [
    # min{1, 1} >= 1 + 0
    ("l2-to-m1inf", dict(p1=2, q1=2, p2=2, q2=2, p=1, q=I), True, None),
    # min{1, 1} >= 1/2 + 1/2
    ("l2-to-l2", dict(p1=2, q1=2, p2=2, q2=2, p=2, q=2), True, None),
    # p = 2 > p1 = 1
    ("p-exceeds-p1", dict(p1=1, q1=2, p2=2, q2=2, p=2, q=2), False, "uslov1"),
    # min{2, 2} >= 1
    ("m1-inputs", dict(p1=1, q1=1, p2=1, q2=1, p=1, q=I), True, None),
    # q1 = 2 > q = 1
    ("q1-exceeds-q", dict(p1=2, q1=2, p2=2, q2=2, p=1, q=1), False, "uslov1"),
    # min{2, 0} = 0 < 1
    ("uslov2-fails", dict(p1=1, q1=I, p2=1, q2=I, p=1, q=I), False, "uslov2"),
    # min{1, 2} = 1 >= 1/2
    ("mixed-exponents", dict(p1=2, q1=1, p2=2, q2=1, p=2, q=I), True, None),
    # q1 = 4 > q = 2
    ("q-too-small", dict(p1=4, q1=4, p2=4, q2=4, p=2, q=2), False, "uslov1"),
    # min{1/2, 1} = 1/2 < 1/2 + 1/4
    ("uslov2-tight-fail", dict(p1=4, q1=2, p2=4, q2=2, p=2, q=4), False, "uslov2"),
    # min{1/3 + 2/3, same} = 1 >= 1 + 0, equality
    ("uslov2-equality", dict(p1=3, q1=3, p2="3/2", q2="3/2", p=1, q=I), True, None),
]

WEYL = [
    # q = 1 <= 2; min{1, 1} >= 0 + 0
    ("m-inf-1", dict(p1=2, q1=2, p2=2, q2=2, p=I, q=1, s=0), True, None),
    ("negative-s", dict(p1=2, q1=2, p2=2, q2=2, p=I, q=1, s=-1), False, "s >= 0"),
    # min{2, inf, 2, 2} = 2 >= 2; min{1, 3/2} = 1 >= 1/2 + 1/2
    ("gate2-pass", dict(p1=2, q1=1, p2=2, q2=2, p=2, q=2, s=0), True, None),
    # same gate 1; 1 < 1/p' + 1/q' = 1 + 1/2
    ("gate2-fail", dict(p1=2, q1=1, p2=2, q2=2, p=I, q=2, s=0), False, "uslov22"),
    # q = 1 <= min{inf, inf, 1, 1}; min{1, 1} >= 1 + 0
    ("m1-spaces", dict(p1=1, q1=1, p2=1, q2=1, p=I, q=1, s=0), True, None),
    # min{1, 1} = 1 < 1/p' + 1/q' = 1 + 1/2
    ("symbol-too-rough", dict(p1=2, q1=2, p2=2, q2=2, p=I, q=2, s=0), False, "uslov22"),
    # q = 1 <= 2; min{1, 1} >= 0 + 0
    ("m11-symbol", dict(p1=2, q1=2, p2=2, q2=2, p=1, q=1, s=0), True, None),
    # q = 2 > min{inf, inf, 1, 1} = 1
    ("uslov11-fails", dict(p1=1, q1=1, p2=1, q2=1, p=I, q=2, s=0), False, "uslov11"),
    # q = 1 <= min{1, 1, inf, inf}; min{0 + 1, 0 + 1} >= 1
    ("m-inf-spaces", dict(p1=I, q1=I, p2=I, q2=I, p=I, q=1, s=0), True, None),
    ("positive-s", dict(p1=2, q1=2, p2=2, q2=2, p=I, q=1, s="1/2"), True, None),
]

_B = dict(p1=2, q1=2, p2=2, q2=2)
_REC = dict(_B, p=2, q=2, p0=2, q0=2, r1=2, r2=2, s=0, s0=0, t0=0)
_INF = dict(_B, p=I, q=1, p0=I, q0=1, r1=2, r2=2, s=0, s0=0, t0=0)
_P1 = dict(_B, p=1, q=1, p0=2, q0=1, r1=2, r2=2, s=0, s0=0, t0="1/2")

LOCALIZATION = [
    # p0 = p = inf -> t0 > 0 strictly; 0 > 0 fails
    ("inf-strict", dict(_INF), False, "t0 >= d(1/p - 1/p0)"),
    ("inf-flag-off", dict(_INF, strict_at_equality=False), True, None),
    ("inf-positive-t0", dict(_INF, t0="1/2"), True, None),
    # recovery case: literal reading fails at t0 = 0
    ("recovery-literal", dict(_REC), False, "t0 >= d(1/p - 1/p0)"),
    ("recovery-flag-off", dict(_REC, strict_at_equality=False), True, None),
    # p = 1: 2p/(2-p) = 2 >= p0 = 2 >= 1; t0 >= 1 - 1/2 = 1/2, not strict
    ("p1-boundary", dict(_P1), True, None),
    # p0 = 3 > 2p/(2-p) = 2
    ("p0-above-range", dict(_P1, p0=3), False, "p0 <= 2p/(2-p)"),
    # t0 = 1/4 < 1/2
    ("t0-too-small", dict(_P1, t0="1/4"), False, "t0 >= d(1/p - 1/p0)"),
    # 1/3 + 1/3 < 1
    ("windows-too-rough", dict(_REC, r1=3, r2=3, strict_at_equality=False), False, "1/r1 + 1/r2"),
    # s0 = -1 < -s = 0
    ("s0-too-small", dict(_REC, s0=-1, strict_at_equality=False), False, "s0 >= -s"),
]

TABLE = {
    "convolution": CONVOLUTION,
    "wigner": WIGNER,
    "weyl": WEYL,
    "localization": LOCALIZATION,
}
