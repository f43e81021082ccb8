//! Ramsey-property laboratory for finite vector spaces over GF(2) carrying
//! alternating bilinear forms.

pub mod colorings;
pub mod forms;
pub mod gf2;
pub mod par;
pub mod ramsey;
