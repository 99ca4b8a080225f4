"""Frozen high-precision constants for tests.

Every value here was computed by tests/_oracle.py (the bundled
extended-precision series oracle) at 50 significant digits and pasted
verbatim; test_oracle.py re-derives a sample of them and also cross-checks
the oracle against mpmath's independent besselj/besseljzero implementation.
Kernel tests compare float64 output against float(...) of these strings.
"""

from __future__ import annotations

# m-th positive zero of J_nu, keyed by (twice_nu, m).
BESSEL_ZEROS = {
    (0, 1): "2.4048255576957727686216318793264546431242449091460",
    (0, 2): "5.5200781102863106495966041128130274252218654787829",
    (0, 3): "8.6537279129110122169541987126609466855657952312754",
    (2, 1): "3.8317059702075123156144358863081607665645452742878",
    (2, 2): "7.0155866698156187535370499814765247432763115029113",
    (4, 1): "5.1356223018406825563014016901377654569737723475005",
    (6, 1): "6.3801618959239835062366146419427033053263036919031",
    (8, 1): "7.5883424345038043850696300079856174173699779013130",
    (1, 1): "3.1415926535897932384626433832795028841971693993751",
    (1, 2): "6.2831853071795864769252867665590057683943387987502",
    (3, 1): "4.4934094579090641753078809272803220822155838722900",
    (5, 1): "5.7634591968945497914064666539527350764090876841674",
    (7, 1): "6.9879320005005199590153333856441855285067706215031",
}

# m-th zero of J'_nu, keyed by (twice_nu, m); these are the positive Neumann
# zeros of the disc (d=2, where Xi_l = J_l).
BESSEL_DERIV_ZEROS = {
    (2, 1): "1.8411837813406593026436295136444433224361270390968",
    (2, 2): "5.3314427735250326368840161834339113674906247757541",
    (4, 1): "3.0542369282271403227559320911485608976414967605299",
    (6, 1): "4.2011889412105284961878552974567121879446032135900",
    (8, 1): "5.3175531260839943503633555581889192147666982862201",
}

# J_nu(x) values keyed by (twice_nu, x-as-string).
BESSEL_VALUES = {
    (0, "1"): "0.76519768655796655144971752610266322090927428975533",
    (2, "1"): "0.44005058574493351595968220371891491312737230199277",
    (0, "14"): "0.17107347611045865906309519319062357686558414380059",
    (1, "1"): "0.67139670714180309041636401204046708054564081676935",
    (4, "7.5"): "-0.23027341052579026215078530564633762290974728101366",
}

# m-th nonnegative zero of d/dr Xi_l for d=3, keyed by (l, m).
NEUMANN_ZEROS_D3 = {
    (1, 1): "2.0815759778181006105376496015685994976179150323704",
    (2, 1): "3.3420936573656941588274035274134311673429353122320",
    (3, 1): "4.5140996470322816771838398979840525308686264117823",
    (0, 2): "4.4934094579090641753078809272803220822155838722900",
}

# gamma(d) = 2^(d-2) d^2 Gamma(d/2)^2 / j_{d/2-1,1}^d at sample dimensions.
GAMMA_VALUES = {
    2: "0.69166027612257970767546733772041485960802684637136",
    3: "0.45594532639051997149745758444377437506961448602511",
    4: "0.29690073404598971651281831073777724090203474562220",
    10: "0.023291273798346332372797946218171505673645750804230",
    21: "0.00028773663267221388924127493464774126502244492547904",
}
