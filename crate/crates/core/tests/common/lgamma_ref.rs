#![allow(clippy::approx_constant)]

// Reference ln Gamma values from a 50-digit evaluation, split as hi + lo.
pub const LN_GAMMA_REF: &[(f64, f64, f64)] = &[
    (0.001, 6.907178885383853, 2.777556825107376e-16),
    (0.002, 6.21345695375936, -3.013150925026725e-16),
    (0.005, 5.295451799982128, 2.9943935537930287e-16),
    (0.01, 4.599479878042022, -1.5044433947094094e-16),
    (0.05, 2.9688792010517306, 1.254604967717329e-16),
    (0.1, 2.252712651734206, -8.214908571963665e-17),
    (0.2, 1.5240638224307845, -6.548650080892374e-17),
    (0.25, 1.2880225246980774, 2.618836891454408e-17),
    (
        0.3333333333333333,
        0.9854206469277671,
        3.0584691485184274e-17,
    ),
    (0.5, 0.5723649429247001, 5.132975581353913e-18),
    (0.75, 0.20328095143129538, -4.327183682604757e-18),
    (0.9, 0.06637623973474295, 3.843690875232079e-18),
    (0.999, 0.0005780385328913802, 7.39181340148594e-21),
    (1.001, -0.0005763935982833062, 1.4393080695562806e-20),
    (1.25, -0.09827183642181316, -6.314779554567454e-18),
    (1.5, -0.12078223763524522, -4.1797047492946264e-18),
    (1.75, -0.08440112102048555, -2.6432142314014824e-18),
    (1.999, -0.0004224618006921073, 1.1079005735174267e-20),
    (2.001, 0.000423106734800117, 7.78676639724258e-22),
    (2.5, 0.2846828704729192, -2.0938630583071727e-17),
    (3.0, 0.6931471805599453, 2.3190468138462996e-17),
    (3.7, 1.428072326665388, 4.823204321026723e-17),
    (5.5, 3.9578139676187165, -2.1692160317109888e-16),
    (7.25, 7.0521854507385395, -8.449924820091046e-17),
    (10.0, 12.801827480081469, 5.206295788716661e-16),
    (12.5, 18.734347511936445, 8.271977772939491e-16),
    (20.0, 39.339884187199495, -6.110776922796771e-16),
    (33.3, 82.60372358165495, -3.8758271361042935e-15),
    (50.0, 144.5657439463449, -9.212127146942847e-15),
    (75.5, 249.72999149863338, 1.1402850193116859e-14),
    (100.0, 359.1342053695754, 1.249838958769947e-15),
    (123.456, 469.6055471299295, -2.149009266109741e-14),
    (140.0, 550.2786517242855, 5.5781769411128246e-14),
    (150.0, 600.0094705553274, 2.862763070862112e-15),
    (160.5, 652.9464885545437, -4.468522639764035e-14),
    (165.25, 677.1233919400871, 2.9104713733138075e-14),
    (169.0, 696.307365093814, -2.9882211401566375e-14),
    (170.0, 701.437263808737, 4.2055124399124327e-14),
];
