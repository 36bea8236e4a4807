//! The partition of a finite meadow by equal images under a surjective hom.

use std::collections::HashMap;

use super::hom::MeadowHom;
use crate::error::{Error, Result};
use crate::meadow::MeadowElement;
use crate::signature::FiniteAlgebra;

/// Classes of `x ~ y iff f(x) = f(y)` with the operations they inherit.
#[derive(Debug, Clone)]
pub struct CongruenceClasses {
    /// Classes in order of first member, members in source order.
    pub classes: Vec<Vec<MeadowElement>>,
    /// The common image of each class.
    pub images: Vec<MeadowElement>,
    /// Operations on class indices. The inverse of a class is the class
    /// mapping to the inverse of its image, which need not contain the
    /// inverse of a member.
    pub algebra: FiniteAlgebra,
}

impl CongruenceClasses {
    pub fn class_of(&self, x: &MeadowElement) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(x))
    }
}

/// Partitions the finite source of a surjective `f` and checks that `+`,
/// `·` and `-` are well defined on classes and that `[x] ↦ f(x)` is a
/// bijective hom.
pub fn congruence_quotient(f: &MeadowHom) -> Result<CongruenceClasses> {
    let src = f.source();
    let dst = f.target();
    let elems = src.elements()?;
    let targets = dst.elements()?;
    let mut classes: Vec<Vec<MeadowElement>> = Vec::new();
    let mut images: Vec<MeadowElement> = Vec::new();
    let mut slot: HashMap<MeadowElement, usize> = HashMap::new();
    let mut class_of: HashMap<MeadowElement, usize> = HashMap::new();
    for x in &elems {
        let fx = f.apply(x)?;
        let k = *slot.entry(fx.clone()).or_insert_with(|| {
            classes.push(Vec::new());
            images.push(fx.clone());
            classes.len() - 1
        });
        classes[k].push(x.clone());
        class_of.insert(x.clone(), k);
    }
    if let Some(miss) = targets.iter().find(|y| !slot.contains_key(*y)) {
        return Err(Error::NotSurjective(miss.to_string()));
    }
    let n = classes.len();
    let mut add = vec![usize::MAX; n * n];
    let mut mul = vec![usize::MAX; n * n];
    let mut neg = vec![usize::MAX; n];
    let clash = |op: &str, x: &MeadowElement, y: &MeadowElement| Error::HomLawViolated {
        law: format!("{op} is well defined on classes"),
        witness: format!("x = {x}, y = {y}"),
    };
    for x in &elems {
        let cx = class_of[x];
        let cn = class_of[&src.neg(x)?];
        if neg[cx] != usize::MAX && neg[cx] != cn {
            return Err(clash("-", x, x));
        }
        neg[cx] = cn;
        for y in &elems {
            let cy = class_of[y];
            for (table, value, op) in [
                (&mut add, src.add(x, y)?, "+"),
                (&mut mul, src.mul(x, y)?, "·"),
            ] {
                let c = class_of[&value];
                let cell = &mut table[cx * n + cy];
                if *cell != usize::MAX && *cell != c {
                    return Err(clash(op, x, y));
                }
                *cell = c;
            }
        }
    }
    let inv = images
        .iter()
        .map(|y| dst.inverse(y).map(|yi| slot[&yi]))
        .collect();
    let labels = classes
        .iter()
        .map(|c| {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("{{{}}}", parts.join(", "))
        })
        .collect();
    let algebra = FiniteAlgebra::from_tables(
        labels,
        add,
        mul,
        neg,
        inv,
        class_of[&src.zero()],
        class_of[&src.one()],
        class_of[&src.error_elem()],
    );
    // the induced map is a bijection by construction; check it is a hom
    for i in 0..n {
        for j in 0..n {
            if images[algebra.add_ix(i, j)] != dst.add(&images[i], &images[j])?
                || images[algebra.mul_ix(i, j)] != dst.mul(&images[i], &images[j])?
            {
                return Err(clash("induced map", &images[i], &images[j]));
            }
        }
    }
    Ok(CongruenceClasses {
        classes,
        images,
        algebra,
    })
}
