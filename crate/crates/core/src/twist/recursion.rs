use super::{TwistError, TwistFamily};
use crate::grp::{Letter, Word};
use crate::hypgeom::{Apply, BoundaryPoint, Geodesic, Isometry};

/// Longest word accepted by the tile recursion.
pub const RECURSION_MAX_LEN: usize = 6;

/// Result of walking a word tile by tile.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedWord {
    /// The twisted image of the word.
    pub element: Isometry,
    /// Its axis endpoints `(repelling, attracting)`, if hyperbolic.
    pub endpoints: Option<(BoundaryPoint, BoundaryPoint)>,
    /// Number of curve lifts crossed.
    pub crossings: usize,
}

/// Twisted image of `w` built geometrically.
///
/// Cutting along the curve `c` leaves a tile `P` stabilised by
/// `⟨c, x⁻¹cx⟩`, bounded among others by the curve axis `Ĉ` and by `x⁻¹Ĉ`.
/// The prefixes `g_j` of `w` walk through the tiles `g_j P`: the letter `c`
/// stays put, `x` crosses `g_j Ĉ` and `x⁻¹` crosses `g_j x⁻¹Ĉ`. The twist
/// is the identity on `P` and, on each new tile, the map of the previous
/// tile followed by a shear of length `t` along the crossed edge, to the
/// left when seen from the previous tile. The result is that map composed
/// with the untwisted image of `w`.
///
/// Only rank-2 families whose second generator crosses the curve once are
/// supported.
pub fn tile_recursion_check(fam: &TwistFamily, w: &Word, t: f64) -> Result<TwistedWord, TwistError> {
    if w.len() > RECURSION_MAX_LEN {
        return Err(TwistError::DepthCap {
            len: w.len(),
            cap: RECURSION_MAX_LEN,
        });
    }
    let rep = fam.base();
    let c = fam.curve().generator;
    if rep.rank() != 2 {
        return Err(TwistError::InvalidCurve("tile recursion needs rank 2"));
    }
    let x = 1 - c;
    if fam.curve().incidence[x].abs() != 1 {
        return Err(TwistError::InvalidCurve("tile recursion needs a single crossing"));
    }
    let curve = rep.generator(c);
    let edge_c = curve.axis()?;
    let x_inv = rep.letter(Letter::new(x, true));
    let edge_x = x_inv.apply(edge_c);

    let mut prefix = Isometry::IDENTITY;
    // the map of the current tile composed with the untwisted prefix
    let mut twisted = Isometry::IDENTITY;
    let mut crossings = 0;
    for &l in w.letters() {
        if l.generator() == x {
            // the edge crossed and a reference edge on the near side of it
            let (edge, near) = if l.is_inverse() {
                (edge_x, edge_c)
            } else {
                (edge_c, edge_x)
            };
            let sign = if near_side_is_left(&prefix.apply(edge), &prefix.apply(near)) {
                1.0
            } else {
                -1.0
            };
            // the shear along g(E) is g·(shear along E)·g⁻¹; the outer g
            // is absorbed into `twisted`
            let along_c = Isometry::translation_along_geodesic(&edge_c, sign * t);
            let local = if l.is_inverse() {
                along_c.conjugate_by(&x_inv)
            } else {
                along_c
            };
            twisted = twisted.compose(&local);
            crossings += 1;
        }
        prefix = prefix.compose(&rep.letter(l));
        twisted = twisted.compose(&rep.letter(l));
    }
    let element = twisted;
    let endpoints = element
        .axis()
        .ok()
        .map(|ax| (ax.repelling(), ax.attracting()));
    Ok(TwistedWord {
        element,
        endpoints,
        crossings,
    })
}

fn near_side_is_left(edge: &Geodesic, near: &Geodesic) -> bool {
    let r = edge.is_left(near.repelling());
    let a = edge.is_left(near.attracting());
    debug_assert_eq!(r, a, "tile edges do not cross");
    r || a
}

/// Image of `w` under the Dehn twist `x ↦ cⁿx` for every generator `x`
/// crossing the curve `c` positively (`x ↦ c⁻ⁿx` for negative crossings).
pub fn dehn_image(fam: &TwistFamily, w: &Word, n: i32) -> Word {
    let c = Word::generator(fam.curve().generator);
    let letters = w.letters().iter().flat_map(|&l| {
        let k = fam.curve().incidence[l.generator()];
        let mut image = Word::generator(l.generator());
        if k != 0 {
            image = c.pow(n * k).concat(&image);
        }
        if l.is_inverse() {
            image = image.inverse();
        }
        image.letters().to_vec()
    });
    Word::from_letters(letters)
}
