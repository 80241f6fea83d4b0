//! Bound quiver algebras: presentations, rewriting, and based algebras.

mod based;
mod parse;
mod path;
mod rewrite;

pub use based::{compile, compile_system, ArrowBasis, BasedAlgebra, BasisElement, Sparse};
pub use parse::parse;
pub use path::{PathSum, PathWord};
pub use rewrite::{RewriteSystem, Rule};

#[cfg(test)]
pub(crate) use based::independent;
pub(crate) use based::{to_sparse, unit};

use crate::matops::Quiver;

/// A quiver with relations generating an ideal `I` inside the square of the
/// arrow ideal.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub quiver: Quiver,
    pub relations: Vec<PathSum>,
}

impl Presentation {
    /// Re-emits the presentation in the text grammar accepted by [`parse`].
    pub fn format_text(&self) -> String {
        let mut s = format!("algebra {}\nvertices {}\n", self.name, self.quiver.vertex_count());
        for a in self.quiver.arrows() {
            s.push_str(&format!("arrow {}: {} -> {}\n", a.name, a.source, a.target));
        }
        for r in &self.relations {
            s.push_str(&format!(
                "relation {}\n",
                r.display(&self.quiver).replace(" + -", " - ")
            ));
        }
        s
    }
}
