//! The G-action on `Rep V`, twisted sectors, the braided G-crossed
//! structure and equivariantization.

pub mod crossed;
pub mod equivariant;
pub mod twisted;

pub use equivariant::EquivariantModule;
pub use twisted::{Sector, TwistedDecomposition};

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::instance::{builtin, Instance};
    use crate::repv::{Module, RepV};
    use crate::scalar::Scalar;

    pub fn load<S: Scalar>(name: &str) -> (Instance<S>, RepV<S>) {
        let inst = Instance::<S>::new(builtin(name).unwrap()).unwrap();
        let rep = inst.rep().unwrap();
        (inst, rep)
    }

    pub fn module<S: Scalar>(inst: &Instance<S>, rep: &RepV<S>, name: &str) -> Module<S> {
        inst.module(rep, name).unwrap()
    }
}
