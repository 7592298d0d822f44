//! The shipped Kodaira table against valuations of reference Weierstrass
//! models over C[[t]].

use mwbound::geometry::KodairaKind;

type Poly = Vec<i128>;

fn mono(c: i128, e: usize) -> Poly {
    let mut p = vec![0; e + 1];
    p[e] = c;
    p
}

fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] += v;
    }
    out
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn scale(a: &Poly, k: i128) -> Poly {
    a.iter().map(|v| v * k).collect()
}

fn val(p: &Poly) -> Option<usize> {
    p.iter().position(|&v| v != 0)
}

/// (v(c4), v(Δ)) of y² + a1xy + a3y = x³ + a2x² + a4x + a6.
fn valuations(a: [Poly; 5]) -> (Option<usize>, usize) {
    let [a1, a2, a3, a4, a6] = a;
    let b2 = add(&mul(&a1, &a1), &scale(&a2, 4));
    let b4 = add(&scale(&a4, 2), &mul(&a1, &a3));
    let b6 = add(&mul(&a3, &a3), &scale(&a6, 4));
    let b8 = add(
        &add(&mul(&mul(&a1, &a1), &a6), &scale(&mul(&a2, &a6), 4)),
        &add(&scale(&mul(&mul(&a1, &a3), &a4), -1), &add(&mul(&a2, &mul(&a3, &a3)), &scale(&mul(&a4, &a4), -1))),
    );
    let c4 = add(&mul(&b2, &b2), &scale(&b4, -24));
    let disc = add(
        &add(&scale(&mul(&mul(&b2, &b2), &b8), -1), &scale(&mul(&mul(&b4, &b4), &b4), -8)),
        &add(&scale(&mul(&b6, &b6), -27), &scale(&mul(&mul(&b2, &b4), &b6), 9)),
    );
    (val(&c4), val(&disc).expect("nonsingular generic fiber"))
}

/// Fiber type of a minimal model from (v(c4), v(Δ)), characteristic zero.
fn classify(vc4: Option<usize>, vd: usize) -> KodairaKind {
    match vc4 {
        Some(0) => KodairaKind::I(vd as u32),
        Some(v) if 3 * v < vd => {
            if vd == 6 {
                KodairaKind::I0Star
            } else {
                KodairaKind::IStar(vd as u32 - 6)
            }
        }
        _ => match vd {
            2 => KodairaKind::II,
            3 => KodairaKind::III,
            4 => KodairaKind::IV,
            6 => KodairaKind::I0Star,
            8 => KodairaKind::IVStar,
            9 => KodairaKind::IIIStar,
            10 => KodairaKind::IIStar,
            _ => panic!("not a minimal additive model: v(Δ) = {vd}"),
        },
    }
}

fn model(kind: KodairaKind) -> [Poly; 5] {
    let z = || vec![];
    match kind {
        KodairaKind::I(n) => [mono(1, 0), z(), z(), z(), mono(1, n as usize)],
        KodairaKind::II => [z(), z(), z(), z(), mono(1, 1)],
        KodairaKind::III => [z(), z(), z(), mono(1, 1), z()],
        KodairaKind::IV => [z(), z(), z(), z(), mono(1, 2)],
        KodairaKind::I0Star => [z(), z(), z(), mono(1, 2), mono(1, 3)],
        KodairaKind::IStar(n) => [z(), mono(1, 1), z(), z(), mono(1, n as usize + 3)],
        KodairaKind::IVStar => [z(), z(), z(), z(), mono(1, 4)],
        KodairaKind::IIIStar => [z(), z(), z(), mono(1, 3), z()],
        KodairaKind::IIStar => [z(), z(), z(), z(), mono(1, 5)],
    }
}

#[test]
fn table_matches_tate_oracle() {
    for kind in KodairaKind::catalog(9) {
        let (vc4, vd) = valuations(model(kind));
        assert_eq!(classify(vc4, vd), kind, "{kind}");
        let f = kind.fiber();
        assert_eq!(f.d as usize, vd, "{kind}: discriminant valuation");
        let multiplicative = vc4 == Some(0);
        assert_eq!(f.c, if multiplicative { 1 } else { 2 }, "{kind}: conductor exponent");
        // Ogg: d = m + c − 1 (Euler number of the fiber).
        assert_eq!(f.d, f.m + f.c - 1, "{kind}: component count");
        assert!(1 <= f.c && f.c <= f.d);
    }
}
