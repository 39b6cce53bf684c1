use crate::algebra::{conjugation_stabilizer, e_idempotent, epsilon, GroupAlgebraElement};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use serde::Serialize;

/// A verified strong Shoda pair (H, K) together with N = N_G(K).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongShodaPair {
    pub h: Subgroup,
    pub k: Subgroup,
    pub n: Subgroup,
    /// Least element index y with H/K = ⟨yK⟩.
    pub generator: usize,
    /// [H:K].
    pub index: usize,
    /// [G:N].
    pub degree: usize,
}

impl StrongShodaPair {
    /// Verifies all defining conditions and builds the pair.
    pub fn new(h: &Subgroup, k: &Subgroup) -> Result<Self> {
        let check = is_strong_shoda_pair(h, k)?;
        if let Some(why) = check.failed {
            return Err(Error::validation(format!("not a strong Shoda pair: {why}")));
        }
        let n = k.normalizer();
        let generator = h.quotient_cyclic_generator(k)?.expect("checked cyclic");
        Ok(StrongShodaPair {
            index: h.order() / k.order(),
            degree: n.group().size() / n.order(),
            h: h.clone(),
            k: k.clone(),
            n,
            generator,
        })
    }

    pub fn group(&self) -> &Group {
        self.h.group()
    }

    pub fn epsilon(&self) -> GroupAlgebraElement {
        epsilon(&self.h, &self.k).expect("verified pair")
    }

    pub fn e(&self) -> GroupAlgebraElement {
        e_idempotent(&self.h, &self.k).expect("verified pair")
    }

    /// Whether the pair is equivalent to `other`: some g has H₁^g ∩ K₂ = K₁^g ∩ H₂.
    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        self.h.same_parent(&other.h)?;
        let g = self.group();
        for t in 0..g.size() {
            let h1 = self.h.conjugate(t);
            let k1 = self.k.conjugate(t);
            if h1.intersection(&other.k)? == k1.intersection(&other.h)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn summary(&self) -> PairSummary {
        PairSummary {
            h: self.h.elements().to_vec(),
            k: self.k.elements().to_vec(),
            n: self.n.elements().to_vec(),
            h_labels: gen_labels(&self.h),
            k_labels: gen_labels(&self.k),
            index: self.index,
            degree: self.degree,
        }
    }
}

fn gen_labels(s: &Subgroup) -> Vec<String> {
    s.small_generators().iter().map(|&x| s.group().label(x).to_string()).collect()
}

/// Serializable description of a pair.
#[derive(Clone, Debug, Serialize)]
pub struct PairSummary {
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
    #[serde(rename = "N")]
    pub n: Vec<usize>,
    pub h_labels: Vec<String>,
    pub k_labels: Vec<String>,
    pub index: usize,
    pub degree: usize,
}

/// Outcome of the strong Shoda pair test; `failed` names the first failing condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShodaCheck {
    pub is_ssp: bool,
    pub failed: Option<String>,
}

impl ShodaCheck {
    fn fail(msg: &str) -> Self {
        ShodaCheck { is_ssp: false, failed: Some(msg.to_string()) }
    }
}

pub fn is_strong_shoda_pair(h: &Subgroup, k: &Subgroup) -> Result<ShodaCheck> {
    h.same_parent(k)?;
    let g = h.group();
    if !k.is_subgroup_of(h) {
        return Ok(ShodaCheck::fail("K is not contained in H"));
    }
    let n = k.normalizer();
    if !h.is_subgroup_of(&n) || !h.is_normal_in(&n)? {
        return Ok(ShodaCheck::fail("H is not normal in N_G(K)"));
    }
    let Some(y) = h.quotient_cyclic_generator(k)? else {
        return Ok(ShodaCheck::fail("H/K is not cyclic"));
    };
    // Maximal abelian in N/K: the centralizer of yK in N/K is exactly H/K.
    let centralizing = n
        .elements()
        .iter()
        .filter(|&&x| k.contains(g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y))))
        .count();
    if centralizing != h.order() {
        return Ok(ShodaCheck::fail("H/K is not maximal abelian in N_G(K)/K"));
    }
    let eps = epsilon(h, k)?;
    let reps = n.right_transversal(&Subgroup::whole(g))?;
    for &t in reps.iter().skip(1) {
        if !(&eps * &eps.conjugate_by(t)).is_zero() {
            return Ok(ShodaCheck::fail("G-conjugates of ε(H,K) are not orthogonal"));
        }
    }
    if conjugation_stabilizer(&eps) != n {
        return Err(Error::consistency("centralizer of ε(H,K) differs from N_G(K)"));
    }
    Ok(ShodaCheck { is_ssp: true, failed: None })
}
