use super::cloud2d::BlobCloud2D;
use super::VortexError;

/// Sheet support curve.
#[derive(Debug, Clone)]
pub enum CurveSpec {
    /// Straight segment between two points.
    Segment {
        from: [f64; 2],
        to: [f64; 2],
    },
    Polyline(Vec<[f64; 2]>),
}

impl CurveSpec {
    fn vertices(&self) -> Vec<[f64; 2]> {
        match self {
            CurveSpec::Segment { from, to } => vec![*from, *to],
            CurveSpec::Polyline(v) => v.clone(),
        }
    }
}

/// Sheet density along the curve, parametrized by normalized arclength.
#[derive(Debug, Clone)]
pub enum StrengthSpec {
    Constant(f64),
    /// `peak * sin(pi s)^2`, vanishing at both ends.
    HannTaper {
        peak: f64,
    },
}

impl StrengthSpec {
    fn value(&self, s: f64) -> f64 {
        match *self {
            StrengthSpec::Constant(c) => c,
            StrengthSpec::HannTaper { peak } => {
                let w = (std::f64::consts::PI * s).sin();
                peak * w * w
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignPattern {
    OneSign,
    /// Data given on the half-plane `x1 > 0`; the mirror image with negated
    /// circulations completes it.
    NmsPair,
}

#[derive(Debug, Clone)]
pub struct SheetSpec {
    pub curve: CurveSpec,
    pub strength: StrengthSpec,
    pub sign_pattern: SignPattern,
}

/// Discretizes a sheet into blobs at arclength midpoints with circulations
/// `strength * arclength weight`; mirror pairs are completed for NMS data.
pub fn build_sheet(spec: &SheetSpec, n: usize, delta: f64) -> Result<BlobCloud2D, VortexError> {
    assert!(n >= 2, "need at least 2 sheet elements");
    let verts = spec.curve.vertices();
    let mut seg_len = Vec::new();
    let mut total = 0.0;
    for w in verts.windows(2) {
        let l = ((w[1][0] - w[0][0]).powi(2) + (w[1][1] - w[0][1]).powi(2)).sqrt();
        seg_len.push(l);
        total += l;
    }
    if total <= 0.0 {
        return Err(VortexError::DegenerateSpec);
    }

    let point_at = |s: f64| -> [f64; 2] {
        let mut remaining = s * total;
        for (k, &l) in seg_len.iter().enumerate() {
            if remaining <= l || k == seg_len.len() - 1 {
                let t = (remaining / l).clamp(0.0, 1.0);
                return [
                    verts[k][0] + t * (verts[k + 1][0] - verts[k][0]),
                    verts[k][1] + t * (verts[k + 1][1] - verts[k][1]),
                ];
            }
            remaining -= l;
        }
        *verts.last().unwrap()
    };

    let weight = total / n as f64;
    let mut positions = Vec::with_capacity(n);
    let mut circulations = Vec::with_capacity(n);
    for k in 0..n {
        let s = (k as f64 + 0.5) / n as f64;
        positions.push(point_at(s));
        circulations.push(spec.strength.value(s) * weight);
    }
    let cloud = BlobCloud2D::new(positions, circulations, delta);
    match spec.sign_pattern {
        SignPattern::OneSign => Ok(cloud),
        SignPattern::NmsPair => mirror_symmetrize(&cloud),
    }
}

/// Completes half-plane data with its mirror image: atoms at `(-x1, x2)`
/// with negated circulations, appended in matching order, so atom `k` pairs
/// with atom `k + n`. Requires the half data to live strictly in `x1 > 0`
/// with nonnegative circulations.
pub fn mirror_symmetrize(half: &BlobCloud2D) -> Result<BlobCloud2D, VortexError> {
    for (index, (p, g)) in half.positions.iter().zip(&half.circulations).enumerate() {
        if p[0] <= 0.0 || *g < 0.0 {
            return Err(VortexError::NotNms { index });
        }
    }
    let n = half.len();
    let mut positions = half.positions.clone();
    let mut circulations = half.circulations.clone();
    positions.reserve(n);
    circulations.reserve(n);
    for k in 0..n {
        positions.push([-half.positions[k][0], half.positions[k][1]]);
        circulations.push(-half.circulations[k]);
    }
    Ok(BlobCloud2D::new(positions, circulations, half.delta))
}

/// Whether the atoms pair up as `(x1, x2, G) <-> (-x1, x2, -G)` within
/// `tol`. Tries the construction pairing (`k <-> k + n/2`) first, then a
/// greedy nearest-image match.
pub fn check_mirror_symmetry(cloud: &BlobCloud2D, tol: f64) -> bool {
    let n = cloud.len();
    if n % 2 != 0 {
        return false;
    }
    let pair_defect = |i: usize, j: usize| -> f64 {
        let (a, b) = (cloud.positions[i], cloud.positions[j]);
        (a[0] + b[0])
            .abs()
            .max((a[1] - b[1]).abs())
            .max((cloud.circulations[i] + cloud.circulations[j]).abs())
    };

    let half = n / 2;
    if (0..half).all(|k| pair_defect(k, k + half) <= tol) {
        return true;
    }

    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] {
            continue;
        }
        let mut best: Option<(usize, f64)> = None;
        for j in 0..n {
            if j == i || used[j] {
                continue;
            }
            let d = pair_defect(i, j);
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        match best {
            Some((j, d)) if d <= tol => {
                used[i] = true;
                used[j] = true;
            }
            _ => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vortex::cloud2d::{step, velocity_field};

    fn flat_sheet(n: usize) -> BlobCloud2D {
        build_sheet(
            &SheetSpec {
                curve: CurveSpec::Segment {
                    from: [-1.0, 0.0],
                    to: [1.0, 0.0],
                },
                strength: StrengthSpec::Constant(1.0),
                sign_pattern: SignPattern::OneSign,
            },
            n,
            0.1,
        )
        .unwrap()
    }

    #[test]
    fn flat_sheet_total_circulation() {
        let cloud = flat_sheet(64);
        assert!((cloud.total_circulation() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn nms_pair_has_zero_total_circulation() {
        let cloud = build_sheet(
            &SheetSpec {
                curve: CurveSpec::Segment {
                    from: [0.2, 0.0],
                    to: [1.2, 0.0],
                },
                strength: StrengthSpec::Constant(1.0),
                sign_pattern: SignPattern::NmsPair,
            },
            32,
            0.1,
        )
        .unwrap();
        assert_eq!(cloud.total_circulation(), 0.0);
        assert!(check_mirror_symmetry(&cloud, 0.0));
    }

    #[test]
    fn refinement_converges_at_a_far_point() {
        let far = [[3.0, 2.0]];
        let u64 = velocity_field(&flat_sheet(64), &far)[0];
        let u128 = velocity_field(&flat_sheet(128), &far)[0];
        let u256 = velocity_field(&flat_sheet(256), &far)[0];
        let d1 = ((u64[0] - u128[0]).powi(2) + (u64[1] - u128[1]).powi(2)).sqrt();
        let d2 = ((u128[0] - u256[0]).powi(2) + (u128[1] - u256[1]).powi(2)).sqrt();
        assert!(d2 < d1, "midpoint sums should converge");
        assert!(d1 < 1e-4);
    }

    #[test]
    fn mirror_symmetrize_rejects_bad_half_data() {
        let left = BlobCloud2D::new(vec![[-0.5, 0.0]], vec![1.0], 0.1);
        assert!(matches!(
            mirror_symmetrize(&left),
            Err(VortexError::NotNms { index: 0 })
        ));
        let negative = BlobCloud2D::new(vec![[0.5, 0.0]], vec![-1.0], 0.1);
        assert!(matches!(
            mirror_symmetrize(&negative),
            Err(VortexError::NotNms { index: 0 })
        ));
    }

    #[test]
    fn empty_half_cloud_symmetrizes_to_empty() {
        let empty = BlobCloud2D::new(vec![], vec![], 0.1);
        assert!(mirror_symmetrize(&empty).unwrap().is_empty());
    }

    #[test]
    fn single_atom_mirrors_to_a_cancelling_pair() {
        let half = BlobCloud2D::new(vec![[1.0, 0.0]], vec![2.0], 0.1);
        let full = mirror_symmetrize(&half).unwrap();
        assert_eq!(full.len(), 2);
        assert_eq!(full.total_circulation(), 0.0);
    }

    #[test]
    fn axis_velocity_has_no_crossflow() {
        let half = BlobCloud2D::new(vec![[0.7, 0.1], [1.3, -0.2]], vec![1.0, 0.5], 0.15);
        let full = mirror_symmetrize(&half).unwrap();
        let on_axis = [[0.0, -1.0], [0.0, 0.4], [0.0, 2.0]];
        for u in velocity_field(&full, &on_axis) {
            assert!(
                u[0].abs() < 1e-15,
                "x1-velocity must cancel on the axis, got {}",
                u[0]
            );
        }
    }

    #[test]
    fn symmetry_survives_time_stepping_exactly() {
        // Binary-representable circulations make the block-ordered total
        // cancel exactly, and the image pairing is preserved bit for bit.
        let half = BlobCloud2D::new(
            (0..16).map(|k| [0.2 + 0.05 * k as f64, 0.0]).collect(),
            vec![0.0625; 16],
            0.1,
        );
        let mut cloud = mirror_symmetrize(&half).unwrap();
        assert_eq!(cloud.total_circulation(), 0.0);
        for _ in 0..100 {
            cloud = step(&cloud, 0.01).unwrap();
        }
        assert!(check_mirror_symmetry(&cloud, 1e-12));
        assert_eq!(cloud.total_circulation(), 0.0);
    }

    #[test]
    fn perturbed_cloud_fails_the_check() {
        let half = BlobCloud2D::new(vec![[1.0, 0.0]], vec![1.0], 0.1);
        let mut full = mirror_symmetrize(&half).unwrap();
        assert!(check_mirror_symmetry(&full, 1e-9));
        full.positions[1][1] += 2e-9;
        assert!(!check_mirror_symmetry(&full, 1e-9));
    }

    #[test]
    fn degenerate_curve_is_rejected() {
        let res = build_sheet(
            &SheetSpec {
                curve: CurveSpec::Segment {
                    from: [1.0, 1.0],
                    to: [1.0, 1.0],
                },
                strength: StrengthSpec::Constant(1.0),
                sign_pattern: SignPattern::OneSign,
            },
            8,
            0.1,
        );
        assert!(matches!(res, Err(VortexError::DegenerateSpec)));
    }
}
