use serde::{Deserialize, Serialize};

use super::beam_splitter::{conditional_beam_splitter, hom_initial_state};
use super::gate::{Combine, CommutatorFormula, ExactTarget, Recipe, SynthesizedGate};
use super::hamiltonian::{nonlinear_hamiltonian, NonlinearParams};
use super::hubbard::{cross_kerr, fswap, span_conditional_beam_splitter};
use super::rotation::{conditional_rotation_fock, conditional_rotation_phase_space, ground_fock_state};
use super::span01::{anharmonicity_gate, effective_pauli_span01, EffectiveAxis};
use super::state_prep::{excited_fock_state, state_prep_protected, state_prep_t, state_prep_t2, ProtectedPlan};
use crate::block_encodings::{
    arb_power_cost_bound, mult_cost_bound, power_cost_bound, AddPlan, BlockEncoding,
};
use crate::error::{Result, SynthError};
use crate::fock_ops::PauliAxis;
use crate::tensor_core::{basis_state, HilbertLayout, ModeCutoff, StateVector};

/// How commutator exponentials are compiled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaChoice {
    Group,
    #[default]
    Bch,
}

/// How the terms of a sum are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CombineChoice {
    /// Lowest Trotter order matching the commutator order.
    #[default]
    Auto,
    Product,
    Trotter,
    Merged,
}

/// How `T_k` is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// Balanced binary-digit powers of `S₁`.
    #[default]
    ArbPower,
    /// `ADD(S₁, S₁)` with the chosen formulas; `k = 2` only.
    Add,
}

/// Parameters shared by all registered applications.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AppParams {
    /// Photon-number cutoff `Λ` per mode.
    pub cutoff: u32,
    pub formula: FormulaChoice,
    /// Commutator-formula order `p`.
    pub order: u32,
    pub symmetrized: bool,
    pub combine: CombineChoice,
    /// Even Trotter order for `combine = "trotter"`.
    pub trotter_order: u32,
    pub slices: u64,
    pub omega: f64,
    pub kappa: f64,
    pub k: u32,
    pub axis: EffectiveAxis,
    pub construction: Construction,
}

impl Default for AppParams {
    fn default() -> Self {
        AppParams {
            cutoff: 10,
            formula: FormulaChoice::Bch,
            order: 1,
            symmetrized: false,
            combine: CombineChoice::Auto,
            trotter_order: 2,
            slices: 1,
            omega: 1.0,
            kappa: 1.0,
            k: 2,
            axis: EffectiveAxis::Z,
            construction: Construction::ArbPower,
        }
    }
}

impl AppParams {
    pub fn mode_cutoff(&self) -> Result<ModeCutoff> {
        ModeCutoff::new(self.cutoff)
    }

    pub fn recipe(&self) -> Result<Recipe> {
        if self.order < 1 {
            return Err(SynthError::invalid("order must be at least 1"));
        }
        if self.slices < 1 {
            return Err(SynthError::invalid("slices must be at least 1"));
        }
        let commutator = match self.formula {
            FormulaChoice::Group => CommutatorFormula::Group,
            FormulaChoice::Bch => CommutatorFormula::Bch { order: self.order, symmetrized: self.symmetrized },
        };
        let combine = match self.combine {
            CombineChoice::Auto => Recipe::order(self.order)?.combine,
            CombineChoice::Product => Combine::Product,
            CombineChoice::Merged => Combine::MergedStrang,
            CombineChoice::Trotter => {
                if self.trotter_order < 2 || self.trotter_order % 2 != 0 {
                    return Err(SynthError::invalid("trotter_order must be even and at least 2"));
                }
                Combine::Trotter { order: self.trotter_order }
            }
        };
        Ok(Recipe { commutator, combine, slices: self.slices })
    }

    fn pauli_axis(&self) -> PauliAxis {
        match self.axis {
            EffectiveAxis::X => PauliAxis::X,
            EffectiveAxis::Y => PauliAxis::Y,
            EffectiveAxis::Z => PauliAxis::Z,
        }
    }

    fn add_plan(&self) -> Result<AddPlan> {
        let recipe = self.recipe()?;
        let trotter_order = match recipe.combine {
            Combine::Trotter { order } => order,
            _ => 2,
        };
        if recipe.combine == Combine::Product {
            return Err(SynthError::invalid("the ADD construction needs a Trotter or merged formula"));
        }
        Ok(AddPlan {
            bch_order: self.order,
            symmetrized: self.symmetrized,
            trotter_order,
            slices: self.slices,
            merged: recipe.combine == Combine::MergedStrang,
        })
    }
}

/// A registered synthesis with its exact target.
pub struct ApplicationSpec {
    pub name: &'static str,
    pub summary: &'static str,
    /// Tensor factors acted on.
    pub layout: &'static str,
    /// Parameters read by the builder, with their meaning.
    pub parameters: &'static [(&'static str, &'static str)],
    /// Extra facts, such as exact times.
    pub notes: &'static str,
    build: fn(&AppParams) -> Result<SynthesizedGate>,
    initial_state: fn(&AppParams) -> Result<StateVector>,
    cost_bound: fn(&AppParams) -> Result<f64>,
}

impl std::fmt::Debug for ApplicationSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ApplicationSpec").field("name", &self.name).finish_non_exhaustive()
    }
}

impl ApplicationSpec {
    pub fn build(&self, params: &AppParams) -> Result<SynthesizedGate> {
        (self.build)(params)
    }

    /// Reference state for autocorrelation and dynamics.
    pub fn initial_state(&self, params: &AppParams) -> Result<StateVector> {
        (self.initial_state)(params)
    }

    /// Closed-form bound on primitive exponentials.
    pub fn cost_bound(&self, params: &AppParams) -> Result<f64> {
        (self.cost_bound)(params)
    }

    /// Hilbert-space dimension the builder would allocate.
    pub fn dimension(&self, params: &AppParams) -> Result<usize> {
        let modes = self.layout.matches("mode").count() as u32;
        let levels = params.cutoff as usize + 1;
        levels
            .checked_pow(modes)
            .and_then(|d| d.checked_mul(2))
            .ok_or_else(|| SynthError::invalid("dimension overflows usize"))
    }

    pub fn describe(&self) -> String {
        let mut out = format!("{}\n  {}\n  layout: {}\n", self.name, self.summary, self.layout);
        if !self.parameters.is_empty() {
            out.push_str("  parameters:\n");
            for (key, meaning) in self.parameters {
                out.push_str(&format!("    {key:<13} {meaning}\n"));
            }
        }
        if !self.notes.is_empty() {
            out.push_str(&format!("  {}\n", self.notes));
        }
        out
    }
}

fn from_block(name: &str, block: &BlockEncoding) -> Result<SynthesizedGate> {
    let exact = ExactTarget::generator(block.generator().clone())?;
    let order = block.order().unwrap_or(1.0);
    SynthesizedGate::new(name, block.unitary().clone(), exact, 0, order)
}

fn t_gate(p: &AppParams) -> Result<BlockEncoding> {
    let cutoff = p.mode_cutoff()?;
    match p.construction {
        Construction::ArbPower => state_prep_t(p.k, p.order, cutoff),
        Construction::Add => {
            if p.k != 2 {
                return Err(SynthError::invalid("the ADD construction prepares k = 2 only"));
            }
            state_prep_t2(&p.add_plan()?, cutoff)
        }
    }
}

fn t_cost(p: &AppParams) -> Result<f64> {
    match p.construction {
        Construction::ArbPower => {
            let bits = 32 - p.k.leading_zeros();
            Ok(arb_power_cost_bound(bits, p.order))
        }
        Construction::Add => {
            let plan = p.add_plan()?;
            let combine = if plan.merged { Combine::MergedStrang } else { Combine::Trotter { order: plan.trotter_order } };
            let cc = CommutatorFormula::Bch { order: plan.bch_order, symmetrized: plan.symmetrized }.cost();
            Ok((combine.invocations(2, plan.slices) * cc) as f64)
        }
    }
}

fn recipe_bound(p: &AppParams, commutators: usize, primitives: usize) -> Result<f64> {
    Ok(p.recipe()?.cost_bound(commutators, primitives) as f64)
}

const ORDER_PARAMS: &[(&str, &str)] = &[
    ("cutoff", "photon-number cutoff Λ per mode"),
    ("formula", "\"bch\" or \"group\" commutator formula"),
    ("order", "commutator-formula order p"),
    ("symmetrized", "symmetrize each commutator formula"),
    ("combine", "\"auto\", \"product\", \"trotter\" or \"merged\""),
    ("trotter_order", "even Trotter order when combine = \"trotter\""),
    ("slices", "outer time slices r"),
];

const T_PARAMS: &[(&str, &str)] = &[
    ("cutoff", "photon-number cutoff Λ"),
    ("k", "target Fock state |k⟩, 1 ≤ k ≤ Λ"),
    ("order", "commutator-formula order p"),
    ("construction", "\"arb_power\" or \"add\" (k = 2)"),
    ("symmetrized", "ADD only: symmetrized commutators"),
    ("combine", "ADD only: \"trotter\" or \"merged\""),
    ("trotter_order", "ADD only: even Trotter order"),
    ("slices", "ADD only: outer slices"),
];

/// All registered applications.
#[derive(Debug)]
pub struct Registry {
    specs: Vec<ApplicationSpec>,
}

impl Default for Registry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl Registry {
    pub fn builtin() -> Self {
        let specs = vec![
            ApplicationSpec {
                name: "conditional-rotation",
                summary: "exp(itn̂σᵏ) from conditional position and momentum shifts",
                layout: "qubit ⊗ mode",
                parameters: &[
                    ("cutoff", "photon-number cutoff Λ"),
                    ("axis", "\"x\", \"y\" or \"z\" conditioning axis"),
                    ("formula", "\"bch\" or \"group\" commutator formula"),
                    ("order", "commutator-formula order p"),
                    ("symmetrized", "symmetrize each commutator formula"),
                    ("combine", "\"auto\", \"product\", \"trotter\" or \"merged\""),
                    ("trotter_order", "even Trotter order when combine = \"trotter\""),
                    ("slices", "outer time slices r"),
                ],
                notes: "compared below the cutoff; from |g,2⟩ the exact autocorrelation is cos 2t",
                build: |p| conditional_rotation_phase_space(p.pauli_axis(), &p.recipe()?, p.mode_cutoff()?),
                initial_state: |p| ground_fock_state(p.mode_cutoff()?, 2),
                cost_bound: |p| recipe_bound(p, 2, 1),
            },
            ApplicationSpec {
                name: "conditional-rotation-fock",
                summary: "exp(itn̂σᶻ) from MULT(B_a, S₁) and a qubit phase",
                layout: "qubit ⊗ mode",
                parameters: &[("cutoff", "photon-number cutoff Λ"), ("order", "MULT commutator order q")],
                notes: "compared below the cutoff",
                build: |p| conditional_rotation_fock(p.order, p.mode_cutoff()?),
                initial_state: |p| ground_fock_state(p.mode_cutoff()?, 2),
                cost_bound: |p| Ok(mult_cost_bound(p.order) + 1.0),
            },
            ApplicationSpec {
                name: "nonlinear-hamiltonian",
                summary: "upper-left block exp(it(ωa†a + (κ/2)(a†)²a²))",
                layout: "qubit ⊗ mode, qubit in |0⟩",
                parameters: &[
                    ("cutoff", "photon-number cutoff Λ"),
                    ("omega", "ω ≥ 0"),
                    ("kappa", "κ ≥ 0"),
                    ("order", "product commutator order q"),
                ],
                notes: "",
                build: |p| {
                    nonlinear_hamiltonian(&NonlinearParams { omega: p.omega, kappa: p.kappa, q: p.order }, p.mode_cutoff()?)
                },
                initial_state: |p| basis_state(&HilbertLayout::qubit_mode(p.mode_cutoff()?), &[0, 2]),
                cost_bound: |p| {
                    let number = mult_cost_bound(p.order);
                    let kerr = mult_cost_bound(p.order) * power_cost_bound(2, 2 * p.order);
                    Ok(2.0 * (number + kerr))
                },
            },
            ApplicationSpec {
                name: "state-prep-T",
                summary: "T_k(t) = exp(it[[0,(a†)^k],[a^k,0]]) mapping |1,0⟩ to |0,k⟩",
                layout: "qubit ⊗ mode",
                parameters: T_PARAMS,
                notes: "exact preparation time t = (2n+1)π/(2√k!), n ≥ 0",
                build: |p| from_block("state-prep-T", &t_gate(p)?),
                initial_state: |p| excited_fock_state(p.mode_cutoff()?, 0),
                cost_bound: t_cost,
            },
            ApplicationSpec {
                name: "state-prep-protected",
                summary: "P_k(t) = exp(it[[0,2(a†)^k|0⟩⟨0|],[2|0⟩⟨0|a^k,0]]) from two T̃_k calls",
                layout: "qubit ⊗ mode",
                parameters: T_PARAMS,
                notes: "exact preparation time t = (2n+1)π/(4√k!), n ≥ 0; |1,b⟩ is fixed for b ≠ 0",
                build: |p| from_block("state-prep-protected", &state_prep_protected(&t_gate(p)?, p.k, &ProtectedPlan::product())?),
                initial_state: |p| excited_fock_state(p.mode_cutoff()?, 0),
                cost_bound: |p| Ok(2.0 * t_cost(p)?),
            },
            ApplicationSpec {
                name: "hom-beam-splitter",
                summary: "exp(−it(a₁†a₂ + a₁a₂†)σᶻ) from x̂₁x̂₂ and p̂₁p̂₂ commutators",
                layout: "qubit ⊗ mode ⊗ mode",
                parameters: ORDER_PARAMS,
                notes: "from |g,1,1⟩ the coincidence probability vanishes at t = π/4",
                build: |p| conditional_beam_splitter(&p.recipe()?, p.mode_cutoff()?),
                initial_state: |p| hom_initial_state(p.mode_cutoff()?),
                cost_bound: |p| recipe_bound(p, 2, 0),
            },
            ApplicationSpec {
                name: "fswap",
                summary: "cross-Kerr, beam splitter and conditional rotations; FSWAP on span{|0⟩,|1⟩}⊗² at t = 1",
                layout: "qubit ⊗ mode ⊗ mode",
                parameters: ORDER_PARAMS,
                notes: "",
                build: |p| fswap(&p.recipe()?, p.mode_cutoff()?),
                initial_state: |p| basis_state(&HilbertLayout::qubit_two_modes(p.mode_cutoff()?, p.mode_cutoff()?), &[0, 1, 0]),
                cost_bound: |p| Ok(p.recipe()?.commutator.cost() as f64 + recipe_bound(p, 2, 0)? + 2.0),
            },
            ApplicationSpec {
                name: "cross-kerr",
                summary: "exp(itn̂₁n̂₂σᶻ) from [(1/√2)n̂₁σˣ, (1/√2)n̂₂σʸ]",
                layout: "qubit ⊗ mode ⊗ mode",
                parameters: ORDER_PARAMS,
                notes: "",
                build: |p| cross_kerr(&p.recipe()?, p.mode_cutoff()?),
                initial_state: |p| basis_state(&HilbertLayout::qubit_two_modes(p.mode_cutoff()?, p.mode_cutoff()?), &[0, 1, 1]),
                cost_bound: |p| Ok(p.recipe()?.commutator.cost() as f64),
            },
            ApplicationSpec {
                name: "span-conditional-beam-splitter",
                summary: "beam splitter with the ½{q̂, n̂}-weighted correction from nested commutators",
                layout: "qubit ⊗ mode ⊗ mode",
                parameters: ORDER_PARAMS,
                notes: "",
                build: |p| span_conditional_beam_splitter(&p.recipe()?, p.mode_cutoff()?),
                initial_state: |p| basis_state(&HilbertLayout::qubit_two_modes(p.mode_cutoff()?, p.mode_cutoff()?), &[0, 1, 0]),
                cost_bound: |p| {
                    let r = p.recipe()?;
                    let cc = r.commutator.cost();
                    Ok((r.combine.invocations(4, r.slices) * cc * cc) as f64)
                },
            },
            ApplicationSpec {
                name: "effective-pauli",
                summary: "exp(itσ_eff σᶻ) on span{|0⟩,|1⟩} of the mode",
                layout: "qubit ⊗ mode",
                parameters: &[
                    ("cutoff", "photon-number cutoff Λ"),
                    ("axis", "\"x\", \"y\" or \"z\" effective Pauli"),
                    ("formula", "\"bch\" or \"group\" commutator formula"),
                    ("order", "commutator-formula order p"),
                    ("combine", "\"auto\", \"product\", \"trotter\" or \"merged\""),
                    ("slices", "outer time slices r"),
                ],
                notes: "the z gate is exact on the span",
                build: |p| effective_pauli_span01(p.axis, &p.recipe()?, p.mode_cutoff()?),
                initial_state: |p| ground_fock_state(p.mode_cutoff()?, 1),
                cost_bound: |p| match p.axis {
                    EffectiveAxis::Z => recipe_bound(p, 0, 2),
                    _ => recipe_bound(p, 2, 1),
                },
            },
            ApplicationSpec {
                name: "anharmonicity",
                summary: "exp(itn̂(n̂−1)σᶻ) from [(1/√2)n̂σˣ, (1/√2)n̂σʸ] and a conditional rotation",
                layout: "qubit ⊗ mode",
                parameters: ORDER_PARAMS,
                notes: "identity on span{|0⟩,|1⟩}",
                build: |p| anharmonicity_gate(&p.recipe()?, p.mode_cutoff()?),
                initial_state: |p| ground_fock_state(p.mode_cutoff()?, 2),
                cost_bound: |p| recipe_bound(p, 1, 1),
            },
        ];
        Registry { specs }
    }

    pub fn specs(&self) -> &[ApplicationSpec] {
        &self.specs
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.specs.iter().map(|s| s.name).collect()
    }

    pub fn get(&self, name: &str) -> Result<&ApplicationSpec> {
        self.specs.iter().find(|s| s.name == name).ok_or_else(|| {
            SynthError::invalid(format!("unknown application `{name}`; known: {}", self.names().join(", ")))
        })
    }

    pub fn describe(&self, name: &str) -> Result<String> {
        Ok(self.get(name)?.describe())
    }
}
