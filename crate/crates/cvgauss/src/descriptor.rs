//! JSON state descriptors.
//!
//! ```json
//! {"kind":"dsts","nbar":0.5,"r":0.3,"phi":0.0,"alpha":[0.1,-0.2]}
//! {"kind":"sts2","nbar1":0.1,"nbar2":0.2,"r":0.8,"phi":0.0}
//! ```
//!
//! All fields are required and unknown fields are rejected.

use std::path::Path;

use cvgauss_core::{Complex, DstsParams, TwoModeStsParams};
use serde::{Deserialize, Serialize};

use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StateDescriptor {
    Dsts(DstsFields),
    Sts2(Sts2Fields),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DstsFields {
    pub nbar: f64,
    pub r: f64,
    pub phi: f64,
    pub alpha: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sts2Fields {
    pub nbar1: f64,
    pub nbar2: f64,
    pub r: f64,
    pub phi: f64,
}

/// A validated state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum State {
    One(DstsParams),
    Two(TwoModeStsParams),
}

impl StateDescriptor {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("state descriptor: {e}")))
    }

    pub fn to_state(&self) -> Result<State> {
        Ok(match *self {
            StateDescriptor::Dsts(DstsFields {
                nbar,
                r,
                phi,
                alpha,
            }) => State::One(DstsParams::new(
                nbar,
                r,
                phi,
                Complex::new(alpha[0], alpha[1]),
            )?),
            StateDescriptor::Sts2(Sts2Fields {
                nbar1,
                nbar2,
                r,
                phi,
            }) => State::Two(TwoModeStsParams::new(nbar1, nbar2, r, phi)?),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor fields are plain numbers")
    }
}

impl From<&State> for StateDescriptor {
    fn from(s: &State) -> Self {
        match *s {
            State::One(p) => StateDescriptor::Dsts(DstsFields {
                nbar: p.nbar,
                r: p.r,
                phi: p.phi,
                alpha: [p.alpha.re, p.alpha.im],
            }),
            State::Two(p) => StateDescriptor::Sts2(Sts2Fields {
                nbar1: p.nbar1,
                nbar2: p.nbar2,
                r: p.r,
                phi: p.phi,
            }),
        }
    }
}

/// Reads a state from a file, or from the argument itself when it is an
/// inline JSON object.
pub fn load_state(arg: &str) -> Result<State> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_owned()
    } else {
        std::fs::read_to_string(Path::new(arg))
            .map_err(|e| CliError::Input(format!("cannot read state file {arg}: {e}")))?
    };
    StateDescriptor::parse(&text)?.to_state()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_kinds() {
        let s = StateDescriptor::parse(
            r#"{"kind":"dsts","nbar":0.5,"r":0.3,"phi":7.0,"alpha":[0.1,-0.2]}"#,
        )
        .unwrap()
        .to_state()
        .unwrap();
        match s {
            State::One(p) => {
                assert_eq!(p.alpha, Complex::new(0.1, -0.2));
                // phi is normalized on construction.
                assert!((p.phi - (7.0 - 2.0 * std::f64::consts::PI)).abs() < 1e-15);
            }
            State::Two(_) => panic!("wrong kind"),
        }
        let s =
            StateDescriptor::parse(r#"{"kind":"sts2","nbar1":0.1,"nbar2":0.2,"r":0.8,"phi":0}"#)
                .unwrap();
        assert!(matches!(s.to_state().unwrap(), State::Two(_)));
    }

    #[test]
    fn rejects_missing_unknown_and_unphysical() {
        for bad in [
            r#"{"kind":"dsts","nbar":0.5,"r":0.3,"phi":0}"#,
            r#"{"kind":"dsts","nbar":0.5,"r":0.3,"phi":0,"alpha":[0,0],"extra":1}"#,
            r#"{"kind":"sts3","nbar1":0,"nbar2":0,"r":0,"phi":0}"#,
            r#"{"nbar":0.5,"r":0.3,"phi":0,"alpha":[0,0]}"#,
            r#"{"kind":"dsts","nbar":0.5,"r":0.3,"phi":0,"alpha":[0]}"#,
        ] {
            assert!(StateDescriptor::parse(bad).is_err(), "{bad}");
        }
        let neg =
            StateDescriptor::parse(r#"{"kind":"dsts","nbar":-1,"r":0,"phi":0,"alpha":[0,0]}"#)
                .unwrap();
        assert!(matches!(neg.to_state(), Err(CliError::Input(_))));
    }

    #[test]
    fn json_round_trip() {
        let d = StateDescriptor::Sts2(Sts2Fields {
            nbar1: 0.25,
            nbar2: 1.0,
            r: 0.5,
            phi: -1.0,
        });
        assert_eq!(
            d.to_json(),
            r#"{"kind":"sts2","nbar1":0.25,"nbar2":1.0,"r":0.5,"phi":-1.0}"#
        );
        assert_eq!(StateDescriptor::parse(&d.to_json()).unwrap(), d);
    }
}
