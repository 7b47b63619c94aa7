//! Expanded integer coefficients of the five recurrences.
//!
//! Each entry is `(power of n, power of α, coefficient)`; the three slices
//! are `P2, P1, P0` in `P2(n) u_{n+1} + P1(n) u_n + P0(n) u_{n-1} = 0`.
//! Generated once by expanding the factored forms in `displayed.rs` and
//! frozen here; the two are compared by the transcription tests.

pub type Term = (u32, u32, i64);

pub(super) const Z1_MINUS: [&[Term]; 3] = [
    &[
        (3, 0, 2), (2, 1, -3), (2, 0, 4), (1, 2, 1), (1, 1, -4), (1, 0, 2), (0, 2, 1),
        (0, 1, -1),
    ],
    &[
        (3, 0, -12), (2, 1, 18), (2, 0, -18), (1, 2, -10), (1, 1, 18), (1, 0, -6), (0, 3, 2),
        (0, 2, -5), (0, 1, 3),
    ],
    &[
        (3, 0, 2), (2, 1, -3), (2, 0, 2), (1, 2, 1), (1, 1, -2),
    ],
];

pub(super) const Z2_MINUS: [&[Term]; 3] = [
    &[
        (6, 0, 5), (5, 1, -14), (5, 0, 20), (4, 2, 14), (4, 1, -46), (4, 0, 30), (3, 3, -6),
        (3, 2, 38), (3, 1, -54), (3, 0, 20), (2, 4, 1), (2, 3, -14), (2, 2, 35), (2, 1, -26),
        (2, 0, 5), (1, 4, 2), (1, 3, -10), (1, 2, 12), (1, 1, -4), (0, 4, 1), (0, 3, -2),
        (0, 2, 1),
    ],
    &[
        (6, 0, -55), (5, 1, 154), (5, 0, -165), (4, 2, -179), (4, 1, 385), (4, 0, -180),
        (3, 3, 116), (3, 2, -358), (3, 1, 332), (3, 0, -85), (2, 4, -45), (2, 3, 174),
        (2, 2, -232), (2, 1, 113), (2, 0, -15), (1, 5, 10), (1, 4, -45), (1, 3, 76),
        (1, 2, -53), (1, 1, 12), (0, 6, -1), (0, 5, 5), (0, 4, -10), (0, 3, 9), (0, 2, -3),
    ],
    &[
        (6, 0, -5), (5, 1, 14), (5, 0, -10), (4, 2, -14), (4, 1, 24), (4, 0, -5), (3, 3, 6),
        (3, 2, -18), (3, 1, 10), (2, 4, -1), (2, 3, 4), (2, 2, -5),
    ],
];

pub(super) const Z2: [&[Term]; 3] = [
    &[
        (6, 0, 5), (5, 1, -16), (5, 0, 20), (4, 2, 19), (4, 1, -54), (4, 0, 30), (3, 3, -10),
        (3, 2, 54), (3, 1, -66), (3, 0, 20), (2, 4, 2), (2, 3, -24), (2, 2, 53), (2, 1, -34),
        (2, 0, 5), (1, 4, 4), (1, 3, -18), (1, 2, 20), (1, 1, -6), (0, 4, 2), (0, 3, -4),
        (0, 2, 2),
    ],
    &[
        (6, 0, -55), (5, 1, 176), (5, 0, -165), (4, 2, -234), (4, 1, 440), (4, 0, -180),
        (3, 3, 160), (3, 2, -468), (3, 1, 388), (3, 0, -85), (2, 4, -56), (2, 3, 240),
        (2, 2, -316), (2, 1, 142), (2, 0, -15), (1, 5, 8), (1, 4, -56), (1, 3, 112),
        (1, 2, -82), (1, 1, 18), (0, 5, 4), (0, 4, -14), (0, 3, 16), (0, 2, -6),
    ],
    &[
        (6, 0, -5), (5, 1, 16), (5, 0, -10), (4, 2, -19), (4, 1, 26), (4, 0, -5), (3, 3, 10),
        (3, 2, -22), (3, 1, 10), (2, 4, -2), (2, 3, 6), (2, 2, -5),
    ],
];

pub(super) const Z3: [&[Term]; 3] = [
    &[
        (9, 0, 6), (8, 1, -27), (8, 0, 36), (7, 2, 50), (7, 1, -144), (7, 0, 90), (6, 3, -49),
        (6, 2, 237), (6, 1, -315), (6, 0, 120), (5, 4, 27), (5, 3, -207), (5, 2, 453),
        (5, 1, -360), (5, 0, 90), (4, 5, -8), (4, 4, 102), (4, 3, -345), (4, 2, 442),
        (4, 1, -225), (4, 0, 36), (3, 6, 1), (3, 5, -27), (3, 4, 147), (3, 3, -284),
        (3, 2, 228), (3, 1, -72), (3, 0, 6), (2, 6, 3), (2, 5, -33), (2, 4, 99), (2, 3, -117),
        (2, 2, 57), (2, 1, -9), (1, 6, 3), (1, 5, -17), (1, 4, 30), (1, 3, -21), (1, 2, 5),
        (0, 6, 1), (0, 5, -3), (0, 4, 3), (0, 3, -1),
    ],
    &[
        (9, 0, -204), (8, 1, 918), (8, 0, -918), (7, 2, -1844), (7, 1, 3672), (7, 0, -1692),
        (6, 3, 2170), (6, 2, -6454), (6, 1, 5922), (6, 0, -1638), (5, 4, -1638), (5, 3, 6510),
        (5, 2, -8946), (5, 1, 4914), (5, 0, -882), (4, 5, 812), (4, 4, -4095), (4, 3, 7560),
        (4, 2, -6230), (4, 1, 2205), (4, 0, -252), (3, 6, -258), (3, 5, 1624), (3, 4, -3836),
        (3, 3, 4270), (3, 2, -2268), (3, 1, 504), (3, 0, -30), (2, 7, 48), (2, 6, -387),
        (2, 5, 1155), (2, 4, -1659), (2, 3, 1197), (2, 2, -399), (2, 1, 45), (1, 8, -4),
        (1, 7, 48), (1, 6, -187), (1, 5, 343), (1, 4, -322), (1, 3, 147), (1, 2, -25),
        (0, 8, -2), (0, 7, 12), (0, 6, -29), (0, 5, 35), (0, 4, -21), (0, 3, 5),
    ],
    &[
        (9, 0, 6), (8, 1, -27), (8, 0, 18), (7, 2, 50), (7, 1, -72), (7, 0, 18), (6, 3, -49),
        (6, 2, 113), (6, 1, -63), (6, 0, 6), (5, 4, 27), (5, 3, -87), (5, 2, 81), (5, 1, -18),
        (4, 5, -8), (4, 4, 33), (4, 3, -45), (4, 2, 18), (3, 6, 1), (3, 5, -5), (3, 4, 9),
        (3, 3, -6),
    ],
];

pub(super) const Z4: [&[Term]; 3] = [
    &[
        (13, 0, 39), (12, 1, -260), (12, 0, 351), (11, 2, 721), (11, 1, -2145), (11, 0, 1404),
        (10, 3, -1098), (10, 2, 5462), (10, 1, -7800), (10, 0, 3276), (9, 4, 1015),
        (9, 3, -7668), (9, 2, 18091), (9, 1, -16380), (9, 0, 4914), (8, 5, -590), (8, 4, 6573),
        (8, 3, -23220), (8, 2, 34265), (8, 1, -21840), (8, 0, 4914), (7, 6, 213),
        (7, 5, -3565), (7, 4, 18282), (7, 3, -39795), (7, 2, 40705), (7, 1, -19110),
        (7, 0, 3276), (6, 7, -44), (6, 6, 1206), (6, 5, -9140), (6, 4, 28423), (6, 3, -42210),
        (6, 2, 31241), (6, 1, -10920), (6, 0, 1404), (5, 8, 4), (5, 7, -234), (5, 6, 2853),
        (5, 5, -12885), (5, 4, 26892), (5, 3, -28413), (5, 2, 15337), (5, 1, -3900),
        (5, 0, 351), (4, 8, 20), (4, 7, -510), (4, 6, 3630), (4, 5, -10800), (4, 4, 15765),
        (4, 3, -11928), (4, 2, 4571), (4, 1, -780), (4, 0, 39), (3, 8, 40), (3, 7, -580),
        (3, 6, 2655), (3, 5, -5415), (3, 4, 5558), (3, 3, -2925), (3, 2, 730), (3, 1, -65),
        (2, 8, 40), (2, 7, -360), (2, 6, 1098), (2, 5, -1540), (2, 4, 1077), (2, 3, -360),
        (2, 2, 45), (1, 8, 20), (1, 7, -114), (1, 6, 231), (1, 5, -215), (1, 4, 93),
        (1, 3, -15), (0, 8, 4), (0, 7, -14), (0, 6, 18), (0, 5, -10), (0, 4, 2),
    ],
    &[
        (13, 0, -10530), (12, 1, 70200), (12, 0, -68445), (11, 2, -213858), (11, 1, 421200),
        (11, 0, -195858), (10, 3, 395676), (10, 2, -1176219), (10, 1, 1102491),
        (10, 0, -324324), (9, 4, -497482), (9, 3, 1978380), (9, 2, -2795153), (9, 1, 1651455),
        (9, 0, -343161), (8, 5, 449452), (8, 4, -2238669), (8, 3, 4229444), (8, 2, -3756546),
        (8, 1, 1559025), (8, 0, -241137), (7, 6, -299998), (7, 5, 1797808), (7, 4, -4256284),
        (7, 3, 5047496), (7, 2, -3135154), (7, 1, 960570), (7, 0, -112788), (6, 7, 149336),
        (6, 6, -1049993), (6, 5, 2995163), (6, 4, -4449872), (6, 3, 3679649), (6, 2, -1676024),
        (6, 1, 385125), (6, 0, -33930), (5, 8, -55088), (5, 7, 448008), (5, 6, -1503025),
        (5, 5, 2693161), (5, 4, -2786514), (5, 3, 1681907), (5, 2, -568968), (5, 1, 96291),
        (5, 0, -5967), (4, 9, 14696), (4, 8, -137720), (4, 7, 536294), (4, 6, -1132580),
        (4, 5, 1413762), (4, 4, -1065166), (4, 3, 474344), (4, 2, -116539), (4, 1, 13455),
        (4, 0, -468), (3, 10, -2692), (3, 9, 29392), (3, 8, -132532), (3, 7, 325908),
        (3, 6, -480267), (3, 5, 436365), (3, 4, -241714), (3, 3, 77495), (3, 2, -12735),
        (3, 1, 780), (2, 11, 304), (2, 10, -4038), (2, 9, 21362), (2, 8, -61078),
        (2, 7, 105072), (2, 6, -112817), (2, 5, 75285), (2, 4, -29895), (2, 3, 6345),
        (2, 2, -540), (1, 12, -16), (1, 11, 304), (1, 10, -1978), (1, 9, 6666), (1, 8, -13370),
        (1, 7, 16786), (1, 6, -13244), (1, 5, 6328), (1, 4, -1656), (1, 3, 180), (0, 12, -8),
        (0, 11, 76), (0, 10, -316), (0, 9, 748), (0, 8, -1096), (0, 7, 1012), (0, 6, -572),
        (0, 5, 180), (0, 4, -24),
    ],
    &[
        (13, 0, -1053), (12, 1, 7020), (12, 0, -4212), (11, 2, -20871), (11, 1, 26325),
        (11, 0, -6201), (10, 3, 36510), (10, 2, -72279), (10, 1, 36231), (10, 0, -3744),
        (9, 4, -41713), (9, 3, 114540), (9, 2, -91391), (9, 1, 20514), (9, 0, -351),
        (8, 5, 32610), (8, 4, -115626), (8, 3, 129984), (8, 2, -47544), (8, 1, 2106),
        (8, 0, 468), (7, 6, -17715), (7, 5, 77265), (7, 4, -114045), (7, 3, 60351),
        (7, 2, -5091), (7, 1, -1911), (7, 0, 117), (6, 7, 6620), (6, 6, -34263), (6, 5, 63253),
        (6, 4, -45259), (6, 3, 6369), (6, 2, 3055), (6, 1, -429), (5, 8, -1632), (5, 7, 9750),
        (5, 6, -21687), (5, 5, 20025), (5, 4, -4356), (5, 3, -2379), (5, 2, 585), (4, 9, 240),
        (4, 8, -1620), (4, 7, 4212), (4, 6, -4833), (4, 5, 1545), (4, 4, 897), (4, 3, -351),
        (3, 10, -16), (3, 9, 120), (3, 8, -356), (3, 7, 490), (3, 6, -222), (3, 5, -130),
        (3, 4, 78),
    ],
];
