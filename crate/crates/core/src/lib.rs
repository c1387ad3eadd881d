//! Hyperbolic orthoschemes and cone-manifolds from the exterior angles of
//! convex polygons.
//!
//! A list of exterior angles `alpha_1 .. alpha_{n+3}` in `(0, pi)` summing to
//! `2 pi` fixes the normal directions of a family of convex polygons. The
//! mixed area on that family is a Lorentzian form whose Gram matrix is a
//! Napier cycle, hence describes a hyperbolic orthoscheme. Gluing the
//! orthoschemes of all orderings of the angles gives a cone-manifold, and
//! the complex version of the area form lives on unfoldings of the doubled
//! polygons.

pub mod angle;
pub mod census;
pub mod cone_manifold;
pub mod error;
pub mod hermitian;
pub mod json;
pub mod linalg;
pub mod mixed_area;
pub mod orthoscheme;
pub mod sample;

pub use angle::{Angle, AngleList, Rational, Slope, SlopeList};
pub use census::{dm_table, rational_search, reproduce_table, SearchHit, TableReport, TableRow};
pub use cone_manifold::{classify, stratum_angle, Classification, StratumReport, Verdict};
pub use error::{Error, Result};
pub use hermitian::{embed, embedding_residual, hermitian_matrix, unfold_double, HermitianMatrix, Unfolding};
pub use linalg::Signature;
pub use mixed_area::{gram_matrix, mixed_area, GramMatrix, NormalFan, SupportVector};
pub use orthoscheme::{
    angles_from_gram, classify_type, coxeter_check, facet_relations, is_compact, CoxeterDiagram, FacetRelation,
    FacetRelations, OrthoschemeType,
};
