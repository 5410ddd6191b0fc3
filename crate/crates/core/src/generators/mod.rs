//! Ground-truth self-affine signals and the transforms that define the
//! experimental conditions (noise, coarse sampling, segmentation).

mod fbm;
mod transform;
mod weierstrass;

pub use fbm::{fbm, FbmSpec};
pub use transform::{add_white_noise, downsample, segment};
pub use weierstrass::{weierstrass, weierstrass_with, WeierstrassSpec};
