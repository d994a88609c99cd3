// Generated from the standard Lebedev-Laikov rules; weights normalized to sum to 1.
use super::Orbit;

pub(super) const RULE_6: &[Orbit] = &[Orbit::A1(0.1666666666666667)];

pub(super) const RULE_14: &[Orbit] = &[Orbit::A1(0.06666666666666667), Orbit::A3(0.075)];

pub(super) const RULE_26: &[Orbit] = &[
    Orbit::A1(0.04761904761904762),
    Orbit::A2(0.0380952380952381),
    Orbit::A3(0.03214285714285714),
];

pub(super) const RULE_38: &[Orbit] = &[
    Orbit::A1(0.009523809523809525),
    Orbit::C {
        p: 0.8880738339771153,
        q: 0.4597008433809831,
        w: 0.02857142857142857,
    },
    Orbit::A3(0.03214285714285714),
];

pub(super) const RULE_50: &[Orbit] = &[
    Orbit::A1(0.0126984126984127),
    Orbit::B {
        l: 0.3015113445777636,
        m: 0.9045340337332909,
        w: 0.02017333553791887,
    },
    Orbit::A2(0.02257495590828924),
    Orbit::A3(0.02109375),
];

pub(super) const RULE_86: &[Orbit] = &[
    Orbit::A1(0.01154401154401154),
    Orbit::C {
        p: 0.9273306571511725,
        q: 0.3742430390903412,
        w: 0.01181230374690448,
    },
    Orbit::B {
        l: 0.3696028464541502,
        m: 0.8525183117012676,
        w: 0.0111105557106034,
    },
    Orbit::B {
        l: 0.6943540066026664,
        m: 0.18906355288539498,
        w: 0.01187650129453714,
    },
    Orbit::A3(0.01194390908585628),
];

pub(super) const RULE_110: &[Orbit] = &[
    Orbit::A1(0.0038282704949371615),
    Orbit::B {
        l: 0.1851156353447362,
        m: 0.9651240350865941,
        w: 0.008211737283191111,
    },
    Orbit::C {
        p: 0.8781589106040661,
        q: 0.4783690288121502,
        w: 0.009694996361663029,
    },
    Orbit::B {
        l: 0.3956894730559419,
        m: 0.8287699812525923,
        w: 0.009595471336070962,
    },
    Orbit::B {
        l: 0.6904210483822922,
        m: 0.21595729184584844,
        w: 0.009942814891178103,
    },
    Orbit::A3(0.009793737512487513),
];

pub(super) const RULE_146: &[Orbit] = &[
    Orbit::A1(0.0005996313688621381),
    Orbit::B {
        l: 0.1574676672039082,
        m: 0.9748886436771732,
        w: 0.007574394159054035,
    },
    Orbit::D {
        r: 0.8822700112603227,
        s: 0.4493328323269557,
        t: 0.1403553811713183,
        w: 0.006991087353303262,
    },
    Orbit::B {
        l: 0.4174961227965453,
        m: 0.8070898183595826,
        w: 0.006753829486314477,
    },
    Orbit::A2(0.007372999718620756),
    Orbit::B {
        l: 0.6764410400114264,
        m: 0.2912988822095268,
        w: 0.007116355493117555,
    },
    Orbit::A3(0.007210515360144488),
];

pub(super) const RULE_170: &[Orbit] = &[
    Orbit::A1(0.005544842902037365),
    Orbit::C {
        p: 0.9652324219764484,
        q: 0.2613931360335988,
        w: 0.005477143385137348,
    },
    Orbit::B {
        l: 0.2551252621114134,
        m: 0.9326425903126906,
        w: 0.005183387587747791,
    },
    Orbit::D {
        r: 0.8544158046846588,
        s: 0.4990453161796037,
        t: 0.1446630744325115,
        w: 0.005968383987681156,
    },
    Orbit::B {
        l: 0.431891069671941,
        m: 0.7917955593934921,
        w: 0.006201670006589077,
    },
    Orbit::A2(0.006071332770670752),
    Orbit::B {
        l: 0.6743601460362766,
        m: 0.3007935951377015,
        w: 0.006317929009813725,
    },
    Orbit::A3(0.006383674773515093),
];

pub(super) const RULE_194: &[Orbit] = &[
    Orbit::A1(0.001782340447244611),
    Orbit::B {
        l: 0.1299335447650067,
        m: 0.9829723027072532,
        w: 0.004106777028169394,
    },
    Orbit::C {
        p: 0.9383192181375916,
        q: 0.3457702197611283,
        w: 0.005051846064614808,
    },
    Orbit::B {
        l: 0.2892465627575439,
        m: 0.9125090968674737,
        w: 0.005158237711805383,
    },
    Orbit::D {
        r: 0.8360360154824589,
        s: 0.525118572443642,
        t: 0.159041710538353,
        w: 0.005530248916233094,
    },
    Orbit::B {
        l: 0.4446933178717437,
        m: 0.7774932193147671,
        w: 0.005518771467273614,
    },
    Orbit::A2(0.005716905949977102),
    Orbit::B {
        l: 0.6712973442695226,
        m: 0.3141969941825863,
        w: 0.005608704082587997,
    },
    Orbit::A3(0.005573383178848737),
];

pub(super) const RULE_302: &[Orbit] = &[
    Orbit::A1(0.0008545911725128148),
    Orbit::B {
        l: 0.09618308522614784,
        m: 0.9907056213794081,
        w: 0.002352101413689164,
    },
    Orbit::C {
        p: 0.964408914879206,
        q: 0.2644152887060663,
        w: 0.002982344963171804,
    },
    Orbit::B {
        l: 0.2219645236294178,
        m: 0.9494543172264431,
        w: 0.003108953122413675,
    },
    Orbit::D {
        r: 0.9024425295330004,
        s: 0.4127724083168531,
        t: 0.1233548532583327,
        w: 0.00339231220500617,
    },
    Orbit::B {
        l: 0.3515640345570105,
        m: 0.8676436245440834,
        w: 0.003449788424305883,
    },
    Orbit::C {
        p: 0.8203264198277593,
        q: 0.5718955891878961,
        w: 0.00360082093221646,
    },
    Orbit::D {
        r: 0.8000727494073951,
        s: 0.5448677372580774,
        t: 0.2510034751770465,
        w: 0.003571540554273387,
    },
    Orbit::B {
        l: 0.4729054132581005,
        m: 0.7434520429875557,
        w: 0.003576729661743367,
    },
    Orbit::B {
        l: 0.7011766416089545,
        m: 0.12923867271051442,
        w: 0.003650045807677255,
    },
    Orbit::B {
        l: 0.6566329410219612,
        m: 0.37103417838482095,
        w: 0.003604822601419882,
    },
    Orbit::A3(0.003599119285025571),
];

pub(super) const RULE_350: &[Orbit] = &[
    Orbit::A1(0.003006796749453936),
    Orbit::C {
        p: 0.9811407828432572,
        q: 0.1932945013230339,
        w: 0.0030079495552185324,
    },
    Orbit::B {
        l: 0.1927533154878019,
        m: 0.9621290551360144,
        w: 0.0029909925296537736,
    },
    Orbit::C {
        p: 0.924966152698679,
        q: 0.3800494919899303,
        w: 0.0028819646030553074,
    },
    Orbit::D {
        r: 0.9074658265305127,
        s: 0.37800918987448673,
        t: 0.1833434647041659,
        w: 0.002832187403926303,
    },
    Orbit::B {
        l: 0.3608302115520091,
        m: 0.860001812127547,
        w: 0.002721564237310992,
    },
    Orbit::D {
        r: 0.8280801506686862,
        s: 0.5521820743493993,
        t: 0.09684121455103957,
        w: 0.003036020026407088,
    },
    Orbit::D {
        r: 0.7934537856582315,
        s: 0.5351230477182762,
        t: 0.2899558825499574,
        w: 0.002958357626535696,
    },
    Orbit::B {
        l: 0.4794682625712025,
        m: 0.7349968505877456,
        w: 0.003005701484901752,
    },
    Orbit::B {
        l: 0.7068965463912316,
        m: 0.024383301669355525,
        w: 0.0016211046002889908,
    },
    Orbit::B {
        l: 0.6930357961327123,
        m: 0.19850131122336542,
        w: 0.002982170644107595,
    },
    Orbit::B {
        l: 0.6498486161496169,
        m: 0.3941998886058389,
        w: 0.0030335137958111416,
    },
    Orbit::A3(0.003050627745650771),
];

pub(super) const RULE_434: &[Orbit] = &[
    Orbit::A1(0.0005265897968224436),
    Orbit::B {
        l: 0.07568084367178018,
        m: 0.9942559126312779,
        w: 0.001462495621594614,
    },
    Orbit::C {
        p: 0.9776428111182649,
        q: 0.2102725228573068,
        w: 0.001910951282179532,
    },
    Orbit::B {
        l: 0.1774836054609158,
        m: 0.9679871587914728,
        w: 0.002014279020918528,
    },
    Orbit::D {
        r: 0.9371809858553722,
        s: 0.3344363145343455,
        t: 0.09921769636429248,
        w: 0.002236607760437849,
    },
    Orbit::B {
        l: 0.2861289010307638,
        m: 0.9144728011208725,
        w: 0.002302694782227416,
    },
    Orbit::C {
        p: 0.8818132877794288,
        q: 0.471598691151316,
        w: 0.002417442375638981,
    },
    Orbit::D {
        r: 0.8689460322872412,
        s: 0.4502330382582625,
        t: 0.2054823696403044,
        w: 0.002416930044324775,
    },
    Orbit::B {
        l: 0.3927259763368002,
        m: 0.8315844004192323,
        w: 0.00244537343731298,
    },
    Orbit::D {
        r: 0.7999278543857286,
        s: 0.5905157048925271,
        t: 0.10680182607580488,
        w: 0.002512236854563495,
    },
    Orbit::D {
        r: 0.7717462626915901,
        s: 0.5550152361076807,
        t: 0.31042840351665446,
        w: 0.002496644054553086,
    },
    Orbit::B {
        l: 0.4914342637784746,
        m: 0.7190165010408435,
        w: 0.0025017251684029355,
    },
    Orbit::A2(0.002548219972002607),
    Orbit::B {
        l: 0.6909346307509111,
        m: 0.21264682470755186,
        w: 0.002530403801186355,
    },
    Orbit::B {
        l: 0.6456664707424256,
        m: 0.40771266489776975,
        w: 0.002513267174597564,
    },
    Orbit::A3(0.002512317418927307),
];

pub(super) const RULE_590: &[Orbit] = &[
    Orbit::A1(0.0003095121295306187),
    Orbit::B {
        l: 0.06095034115507196,
        m: 0.9962781297540164,
        w: 0.000976433116505105,
    },
    Orbit::C {
        p: 0.9850133350280019,
        q: 0.1724782009907724,
        w: 0.001300321685886048,
    },
    Orbit::B {
        l: 0.1459036449157763,
        m: 0.9784805837626939,
        w: 0.001384737234851692,
    },
    Orbit::D {
        r: 0.9571020743100725,
        s: 0.2778673190586244,
        t: 0.08213021581932511,
        w: 0.001555213603396808,
    },
    Orbit::B {
        l: 0.2384736701421887,
        m: 0.9414141582204025,
        w: 0.001617210647254411,
    },
    Orbit::C {
        p: 0.918045287711454,
        q: 0.3964755348199858,
        w: 0.0017051539963958643,
    },
    Orbit::D {
        r: 0.9092134750923736,
        s: 0.3791035407695563,
        t: 0.1720795225656878,
        w: 0.001713904507106709,
    },
    Orbit::B {
        l: 0.3317920736472123,
        m: 0.8830787279341326,
        w: 0.001749564657281154,
    },
    Orbit::D {
        r: 0.8593798558907212,
        s: 0.5033564271075117,
        t: 0.08999205842074876,
        w: 0.0018022391280085248,
    },
    Orbit::D {
        r: 0.8400474883590504,
        s: 0.474239284255198,
        t: 0.263471665593795,
        w: 0.001802658934377451,
    },
    Orbit::B {
        l: 0.4215761784010967,
        m: 0.8028368773352738,
        w: 0.001818471778162769,
    },
    Orbit::C {
        p: 0.791101929626902,
        q: 0.6116843442009876,
        w: 0.001857161196774078,
    },
    Orbit::D {
        r: 0.7803207424799203,
        s: 0.598412649788538,
        t: 0.1816640840360209,
        w: 0.00184983056044366,
    },
    Orbit::D {
        r: 0.7493106119041159,
        s: 0.561026380862206,
        t: 0.3518280927733519,
        w: 0.001842866472905286,
    },
    Orbit::B {
        l: 0.7040954938227469,
        m: 0.09219040707689825,
        w: 0.001871790639277744,
    },
    Orbit::B {
        l: 0.5044419707800358,
        m: 0.700768575373573,
        w: 0.001846715956151242,
    },
    Orbit::B {
        l: 0.6807744066455244,
        m: 0.2703560883591648,
        w: 0.001858812585438317,
    },
    Orbit::B {
        l: 0.6372546939258752,
        m: 0.4333738687771544,
        w: 0.0018520288282962132,
    },
    Orbit::A3(0.001852379698597489),
];

pub(super) const RULES: &[(usize, u32, &[Orbit])] = &[
    (6, 3, RULE_6),
    (14, 5, RULE_14),
    (26, 7, RULE_26),
    (38, 9, RULE_38),
    (50, 11, RULE_50),
    (86, 15, RULE_86),
    (110, 17, RULE_110),
    (146, 19, RULE_146),
    (170, 21, RULE_170),
    (194, 23, RULE_194),
    (302, 29, RULE_302),
    (350, 31, RULE_350),
    (434, 35, RULE_434),
    (590, 41, RULE_590),
];
