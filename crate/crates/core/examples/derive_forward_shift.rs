//! Derive the B-Fredholm family of the forward shift from a few base
//! spectra and print where every value came from.

use spectral_chain::derive::{derive, SpectraProfile, SpectrumKind};
use spectral_chain::region::Primitive;
use spectral_chain::scalar::rational;
use spectral_chain::{ExactScalar, SpectralRegion};

fn main() -> spectral_chain::Result<()> {
    let o = ExactScalar::from_int(0);
    let disk = SpectralRegion::from_primitive(Primitive::disk(o.clone(), rational(1, 1))?);
    let circle = SpectralRegion::from_primitive(Primitive::circle(o, rational(1, 1))?);
    let given = SpectraProfile::new("forward shift")
        .with(SpectrumKind::Sigma, disk.clone())?
        .with(SpectrumKind::Ap, circle.clone())?
        .with(SpectrumKind::Su, disk.clone())?
        .with(SpectrumKind::Phi, circle.clone())?
        .with(SpectrumKind::Tud, circle)?
        .with(SpectrumKind::WMinus, disk.clone())?
        .with(SpectrumKind::W, disk)?;
    let d = derive(&given)?;
    for step in &d.steps {
        println!("σ_{:<5} = {:<24} by {}", step.kind.to_string(), step.region.to_string(), step.rule);
    }
    for n in &d.notices {
        println!("notice: {n}");
    }
    println!("{} of {} spectra known", d.profile.len(), SpectrumKind::ALL.len());
    Ok(())
}
