use super::detect::{reverses, reversor_order_nf};
use super::ReversorWitness;
use crate::algebra::{has_primitive_fourth_root, Scalar};
use crate::amalgam::{normalize, NfLetter, NormalForm, Word};
use crate::error::{Error, Result};
use crate::generators::{AffineMap, BasicMap, ElementaryMap, Letter, Matrix2};

/// Shape of an element `h ∘ c ∘ h⁻¹ ∘ d` with involutions `c`, `d`; `T` is
/// the swap `(y, x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvolutoryForm {
    /// `c = d = T`; `h` begins and ends with elementary letters.
    Swap,
    /// `c = ê` elementary, `d = T`; `h` begins elementary and ends affine.
    ElementaryCentre,
    /// `c = ê`, `d = ē` both elementary; `h` begins and ends affine.
    ElementaryBoth,
}

#[derive(Clone, Debug)]
pub struct InvolutoryParams {
    pub form: InvolutoryForm,
    /// Basic map in front of the first letter of `h`.
    pub b: BasicMap,
    /// Letters of `h`, leftmost first.
    pub letters: Vec<NfLetter>,
    /// `ê`, required unless the form is `Swap`.
    pub centre: Option<ElementaryMap>,
    /// `ē`, required for `ElementaryBoth`.
    pub outer: Option<ElementaryMap>,
}

#[derive(Clone, Debug)]
pub struct Order4Params {
    /// Letters of `h`: alternating, first and last elementary, all
    /// elementary letters odd.
    pub letters: Vec<NfLetter>,
    pub alpha: Scalar,
    pub gamma: Scalar,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidLetters(msg.into())
}

fn check_alternating(letters: &[NfLetter], first_affine: bool, last_affine: bool) -> Result<()> {
    let (Some(first), Some(last)) = (letters.first(), letters.last()) else {
        return Err(invalid("h must contain at least one letter"));
    };
    if letters.windows(2).any(|w| w[0].is_affine() == w[1].is_affine()) {
        return Err(invalid("letters of h must alternate between affine and elementary"));
    }
    let kind = |a: bool| if a { "affine" } else { "elementary" };
    if first.is_affine() != first_affine {
        return Err(invalid(format!("h must begin with an {} letter", kind(first_affine))));
    }
    if last.is_affine() != last_affine {
        return Err(invalid(format!("h must end with an {} letter", kind(last_affine))));
    }
    Ok(())
}

fn check_elementary_involution(e: Option<&ElementaryMap>, name: &str) -> Result<ElementaryMap> {
    let e = e.ok_or_else(|| invalid(format!("{name} is required for this form")))?;
    if e.as_basic().is_some() {
        return Err(invalid(format!("{name} is basic")));
    }
    if !e.compose(e).as_basic().is_some_and(|b| b.is_identity()) {
        return Err(invalid(format!("{name} is not an involution")));
    }
    Ok(e.clone())
}

fn h_word(b: &BasicMap, letters: &[NfLetter]) -> Result<Word> {
    let mut all = vec![Letter::Basic(b.clone())];
    all.extend(letters.iter().map(NfLetter::to_letter));
    Word::new(b.ctx(), all)
}

/// `h ∘ c ∘ h⁻¹ ∘ d` in normal form together with the involutory reversor
/// `d`; as `c` and `d` are involutions, `d ∘ f ∘ d⁻¹ = d ∘ h ∘ c ∘ h⁻¹ = f⁻¹`.
pub fn build_reversible_involutory(params: &InvolutoryParams) -> Result<(NormalForm, ReversorWitness)> {
    let ctx = params.b.ctx();
    ctx.require_odd_characteristic()?;
    let swap = Letter::Affine(AffineMap::linear(Matrix2::swap(ctx))?);
    let (centre, outer, first_affine, last_affine) = match params.form {
        InvolutoryForm::Swap => {
            if params.centre.is_some() || params.outer.is_some() {
                return Err(invalid("the swap form takes no elementary involutions"));
            }
            (swap.clone(), swap, false, false)
        }
        InvolutoryForm::ElementaryCentre => {
            if params.outer.is_some() {
                return Err(invalid("this form closes with the swap, not an outer involution"));
            }
            let c = check_elementary_involution(params.centre.as_ref(), "centre involution")?;
            (Letter::Elementary(c), swap, false, true)
        }
        InvolutoryForm::ElementaryBoth => {
            let c = check_elementary_involution(params.centre.as_ref(), "centre involution")?;
            let d = check_elementary_involution(params.outer.as_ref(), "outer involution")?;
            (Letter::Elementary(c), Letter::Elementary(d), true, true)
        }
    };
    check_alternating(&params.letters, first_affine, last_affine)?;
    let h = h_word(&params.b, &params.letters)?;
    let c = Word::new(ctx, vec![centre])?;
    let d = Word::new(ctx, vec![outer])?;
    let f = normalize(&h.concat(&c).concat(&h.inverse()).concat(&d));
    if !f.is_crnf() {
        return Err(invalid("the construction is not cyclically reduced"));
    }
    let r = normalize(&d);
    if !reverses(&f.to_word(), &r.to_word()) {
        return Err(Error::TheoremViolation("constructed reversor does not reverse".into()));
    }
    Ok((f, ReversorWitness { r, order: 2 }))
}

/// `h ∘ R ∘ h⁻¹ ∘ R₂` with `R = (−y, x)` and `R₂ = (α, −(α²+1)/γ; γ, −α)`,
/// returned with the order-4 reversor `R₂⁻¹ = −R₂`.
pub fn build_reversible_order4(params: &Order4Params) -> Result<(NormalForm, ReversorWitness)> {
    let ctx = params.alpha.ctx();
    ctx.require_odd_characteristic()?;
    if has_primitive_fourth_root(ctx) {
        return Err(Error::FourthRootPresent);
    }
    if params.gamma.is_zero() {
        return Err(Error::ZeroGamma);
    }
    check_alternating(&params.letters, false, false)?;
    for l in &params.letters {
        if let NfLetter::E(e) = l {
            if !e.full_poly().is_odd()? {
                return Err(Error::EvenPolynomial(e.full_poly().to_string()));
            }
        }
    }
    let (a, g) = (&params.alpha, &params.gamma);
    let one = Scalar::one(ctx);
    let r2 = Matrix2::new(a.clone(), -(&(&(a * a) + &one) / g), g.clone(), -a.clone())?;
    let rot = Word::single(AffineMap::linear(Matrix2::rotation(ctx))?);
    let h = h_word(&BasicMap::identity(ctx), &params.letters)?;
    let tail = Word::single(AffineMap::linear(r2.clone())?);
    let f = normalize(&h.concat(&rot).concat(&h.inverse()).concat(&tail));
    let r = normalize(&Word::single(AffineMap::linear(r2.inverse()?)?));
    if !reverses(&f.to_word(), &r.to_word()) {
        return Err(Error::TheoremViolation("constructed reversor does not reverse".into()));
    }
    let order = reversor_order_nf(&r, 8)?;
    if order != 4 {
        return Err(Error::TheoremViolation(format!("constructed reversor has order {order}")));
    }
    Ok((f, ReversorWitness { r, order }))
}
