use alloc::string::{String, ToString};
use alloc::sync::Arc;

use super::{FiniteSimplicialSet, Kz1, Kzm0, SimplicialGroup, SimplicialSet};
use crate::error::{Error, Result};

/// A named built-in space; groups are also usable as plain spaces.
#[derive(Clone)]
pub enum Builtin {
    Set(Arc<dyn SimplicialSet>),
    Group(Arc<dyn SimplicialGroup>),
}

impl Builtin {
    pub fn as_set(&self) -> Arc<dyn SimplicialSet> {
        match self {
            Builtin::Set(s) => s.clone(),
            Builtin::Group(g) => g.clone(),
        }
    }

    pub fn as_group(&self) -> Option<Arc<dyn SimplicialGroup>> {
        match self {
            Builtin::Group(g) => Some(g.clone()),
            Builtin::Set(_) => None,
        }
    }
}

fn argument(name: &str, prefix: &str) -> Option<Result<usize>> {
    let rest = name.strip_prefix(prefix)?.strip_prefix('(')?;
    let inner = rest.strip_suffix(')')?;
    Some(
        inner
            .trim()
            .parse()
            .map_err(|_| Error::UnknownBuiltin(name.to_string())),
    )
}

/// `sphere(n)`, `kz1`, `kzm0(m)`, `circle2`, `point`, `simplex(n)`.
pub fn builtin(name: &str) -> Result<Builtin> {
    let name = name.trim();
    let unknown = || Error::UnknownBuiltin(String::from(name));
    if let Some(n) = argument(name, "sphere") {
        let n = n?;
        if n == 0 {
            return Err(unknown());
        }
        return Ok(Builtin::Set(Arc::new(FiniteSimplicialSet::sphere(n))));
    }
    if let Some(m) = argument(name, "kzm0") {
        let m = m?;
        if m == 0 {
            return Err(unknown());
        }
        return Ok(Builtin::Group(Arc::new(Kzm0::new(m as u64))));
    }
    if let Some(n) = argument(name, "simplex") {
        let n = n?;
        if n > 9 {
            return Err(unknown());
        }
        return Ok(Builtin::Set(Arc::new(
            FiniteSimplicialSet::standard_simplex(n),
        )));
    }
    match name {
        "kz1" => Ok(Builtin::Group(Arc::new(Kz1::new()))),
        "circle2" => Ok(Builtin::Set(Arc::new(FiniteSimplicialSet::circle2()))),
        "point" => Ok(Builtin::Set(Arc::new(FiniteSimplicialSet::point()))),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::Simplex;
    use crate::zchain::Gen;

    #[test]
    fn names() {
        assert_eq!(builtin("sphere(2)").unwrap().as_set().name(), "S^2");
        assert!(builtin("kz1").unwrap().as_group().is_some());
        assert!(
            builtin("kzm0(2)")
                .unwrap()
                .as_group()
                .unwrap()
                .cells(0)
                .as_finite()
                .unwrap()
                .len()
                == 2
        );
        assert!(matches!(builtin("torus3"), Err(Error::UnknownBuiltin(_))));
        assert!(matches!(
            builtin("sphere(x)"),
            Err(Error::UnknownBuiltin(_))
        ));
    }

    #[test]
    fn kz1_last_face() {
        let k = builtin("kz1").unwrap().as_set();
        let s = Simplex::nondegenerate(Gen::bar(&[4, -3]));
        assert_eq!(
            k.face(2, &s).unwrap(),
            Simplex::nondegenerate(Gen::bar(&[4]))
        );
    }
}
