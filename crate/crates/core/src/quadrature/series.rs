//! Taylor coefficients in `ν` of the small-stencil coefficients and the outer
//! linear weights, used where the closed forms cancel catastrophically.

#![allow(clippy::excessive_precision)]

pub(crate) const TERMS: usize = 16;

pub(crate) const SMALL_SERIES: [[[f64; TERMS]; 4]; 3] = [
    [
        [0.00000000000000000e+00, 4.16666666666666644e-02, -1.94444444444444448e-02, 5.55555555555555577e-03, -1.19047619047619058e-03, 2.06679894179894168e-04, -3.03130511463844801e-05, 3.85802469135802478e-06, -4.34236545347656484e-07, 4.38411896745230071e-08, -4.01476095920540331e-09, 3.36475204200071940e-10, -2.60003566881873760e-11, 1.86399615963108029e-12, -1.24641271609318099e-13, 7.80960348429311268e-15],
        [0.00000000000000000e+00, -2.08333333333333343e-01, 1.00000000000000006e-01, -2.91666666666666671e-02, 6.34920634920634920e-03, -1.11607142857142851e-03, 1.65343915343915335e-04, -2.12191358024691350e-05, 2.40500240500240514e-06, -2.44258056758056775e-07, 2.24826613715502592e-08, -1.89267302362540446e-09, 1.46825543650940469e-10, -1.05626449045761218e-11, 7.08487228095071207e-13, -4.45147398604707477e-14],
        [0.00000000000000000e+00, 7.91666666666666630e-01, -4.74999999999999978e-01, 1.66666666666666657e-01, -4.24603174603174621e-02, 8.55654761904761987e-03, -1.43022486772486778e-03, 2.04475308641975309e-04, -2.55531505531505543e-05, 2.83715127465127451e-06, -2.83442123719901482e-07, 2.57403531213055017e-08, -2.14273527765591247e-09, 1.64652994100745433e-10, -1.17490798659099307e-11, 7.82522269126169955e-13],
        [0.00000000000000000e+00, 3.75000000000000000e-01, -1.05555555555555555e-01, 2.36111111111111105e-02, -4.36507936507936518e-03, 6.86177248677248661e-04, -9.36948853615520311e-05, 1.12985008818342144e-05, -1.21920260809149697e-06, 1.18997514830848161e-07, -1.05989689323022660e-08, 8.67953083561549125e-10, -6.57656080936504233e-11, 4.63609301241576411e-12, -3.05511688305546581e-13, 1.88992404319893334e-14],
    ],
    [
        [0.00000000000000000e+00, -4.16666666666666644e-02, 2.22222222222222231e-02, -6.94444444444444406e-03, 1.58730158730158730e-03, -2.89351851851851836e-04, 4.40917107583774280e-05, -5.78703703703703675e-06, 6.68056223611779206e-07, -6.88932980599647207e-08, 6.42361753472864596e-09, -5.46772206825116910e-10, 4.28241168981909711e-11, -3.10666026605180062e-12, 2.09922141657798888e-13, -1.32763259232982922e-14],
        [0.00000000000000000e+00, 5.41666666666666630e-01, -3.58333333333333337e-01, 1.33333333333333331e-01, -3.53174603174603169e-02, 7.31646825396825400e-03, -1.24834656084656082e-03, 1.81327160493827166e-04, -2.29477312810646159e-05, 2.57410413660413674e-06, -2.59353557964669083e-07, 2.37215018961050718e-08, -1.98673313752678844e-09, 1.53469017142958946e-10, -1.10012322362540221e-11, 7.35664648220411260e-13],
        [0.00000000000000000e+00, 5.41666666666666630e-01, -1.83333333333333320e-01, 4.58333333333333301e-02, -9.12698412698412752e-03, 1.51289682539682544e-03, -2.14947089947089951e-04, 2.67305996472663135e-05, -2.95614878948212291e-06, 2.94362273528940189e-07, -2.66580127691238792e-08, 2.21385390036183668e-09, -1.69767034846399927e-10, 1.20920776509400853e-11, -8.04076774742818924e-13, 5.01376543691617873e-14],
        [0.00000000000000000e+00, -4.16666666666666644e-02, 1.94444444444444448e-02, -5.55555555555555577e-03, 1.19047619047619058e-03, -2.06679894179894168e-04, 3.03130511463844801e-05, -3.85802469135802478e-06, 4.34236545347656484e-07, -4.38411896745230071e-08, 4.01476095920540331e-09, -3.36475204200071940e-10, 2.60003566881873760e-11, -1.86399615963108029e-12, 1.24641271609318099e-13, -7.80960348429311268e-15],
    ],
    [
        [0.00000000000000000e+00, 3.75000000000000000e-01, -2.69444444444444431e-01, 1.05555555555555555e-01, -2.89682539682539694e-02, 6.15906084656084665e-03, -1.07197971781305122e-03, 1.58179012345679022e-04, -2.02755063866174982e-05, 2.29853094436427765e-06, -2.33659087825754486e-07, 2.15344130688046042e-08, -1.81543666993402443e-09, 1.41042376078751743e-10, -1.01615436696228272e-11, 6.82559344527218072e-13],
        [0.00000000000000000e+00, 7.91666666666666630e-01, -3.16666666666666652e-01, 8.74999999999999944e-02, -1.86507936507936505e-02, 3.24900793650793667e-03, -4.79497354497354492e-04, 6.14528218694885425e-05, -6.96448613115279772e-06, 7.07722061888728567e-07, -6.51997179774957616e-08, 5.49448714131253814e-09, -4.26711736235545767e-10, 3.07320392472508906e-11, -2.06360962468961230e-12, 1.29795609908951550e-13],
        [0.00000000000000000e+00, -2.08333333333333343e-01, 1.08333333333333337e-01, -3.33333333333333329e-02, 7.53968253968253978e-03, -1.36408730158730151e-03, 2.06679894179894168e-04, -2.70061728395061743e-05, 3.10646143979477294e-06, -3.19414381914381896e-07, 2.97092310981199880e-08, -2.52356403150053942e-09, 1.97296824280951257e-10, -1.42906372238382816e-11, 9.64329838240513550e-13, -6.09149071774862783e-14],
        [0.00000000000000000e+00, 4.16666666666666644e-02, -2.22222222222222231e-02, 6.94444444444444406e-03, -1.58730158730158730e-03, 2.89351851851851836e-04, -4.40917107583774280e-05, 5.78703703703703675e-06, -6.68056223611779206e-07, 6.88932980599647207e-08, -6.42361753472864596e-09, 5.46772206825116910e-10, -4.28241168981909711e-11, 3.10666026605180062e-12, -2.09922141657798888e-13, 1.32763259232982922e-14],
    ],
];
pub(crate) const D0_SERIES: [f64; TERMS] = [1.83333333333333320e-01, -9.68253968253968318e-03, 2.03703703703703691e-04, 6.33156966490299800e-05, -3.09313848996388691e-06, -6.29733973649317538e-07, 4.57912882075139553e-08, 6.59252884078616857e-09, -6.49993432418336578e-10, -6.80357232096171813e-11, 8.88411654731142304e-12, 6.73183278277433412e-13, -1.17605740179247474e-13, -6.20500780840163984e-15, 1.51472881083491626e-15, 5.03540713544787549e-17];
pub(crate) const D2_SERIES: [f64; TERMS] = [1.83333333333333320e-01, 9.68253968253968318e-03, 2.03703703703703691e-04, -6.33156966490299800e-05, -3.09313848996388691e-06, 6.29733973649317538e-07, 4.57912882075139553e-08, -6.59252884078616857e-09, -6.49993432418336578e-10, 6.80357232096171813e-11, 8.88411654731142304e-12, -6.73183278277433412e-13, -1.17605740179247474e-13, 6.20500780840163984e-15, 1.51472881083491626e-15, -5.03540713544787549e-17];
