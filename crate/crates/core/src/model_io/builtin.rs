use crate::{Error, Result};

/// Names and one-line descriptions of the bundled models.
pub const BUILTIN_MODELS: [(&str, &str); 3] = [
    ("twosite", "two coupled sites, no noise; Rabi transfer eta(t) = sin^2(t)"),
    ("threesite", "triangle with v = 1 and strong dephasing (50 ps^-1) on the middle site"),
    ("fmo7", "7-site FMO-like complex with dephasing, weak loss and a sink on site 3"),
];

const TWOSITE: &str = include_str!("models/twosite.toml");
const THREESITE: &str = include_str!("models/threesite.toml");
const FMO7: &str = include_str!("models/fmo7.toml");

/// The bundled configuration document for `name`.
pub fn builtin_model(name: &str) -> Result<&'static str> {
    match name {
        "twosite" => Ok(TWOSITE),
        "threesite" => Ok(THREESITE),
        "fmo7" => Ok(FMO7),
        other => Err(Error::Config(format!(
            "unknown model '{other}' (available: twosite, threesite, fmo7)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Output;
    use crate::model_io::parse_config;

    #[test]
    fn threesite_matches_published_rates() {
        let cfg = parse_config(builtin_model("threesite").unwrap()).unwrap();
        let spec = cfg.spec;
        assert_eq!(spec.n_sites(), 3);
        assert_eq!((spec.hopping[0][1], spec.hopping[1][2], spec.hopping[0][2]), (1.0, 1.0, 1.0));
        assert_eq!(spec.dephasing, vec![0.0, 50.0, 0.0]);
        assert_eq!((spec.input_site, spec.output), (1, Output::Site(3)));
    }

    #[test]
    fn twosite_is_noiseless() {
        let spec = parse_config(builtin_model("twosite").unwrap()).unwrap().spec;
        assert_eq!(spec.n_sites(), 2);
        assert_eq!(spec.hopping[0][1], 1.0);
        assert!(spec.dephasing.iter().chain(&spec.dissipation).all(|&r| r == 0.0));
        assert!(spec.sink.is_none());
    }

    #[test]
    fn fmo7_has_sink_on_site_three() {
        let doc = builtin_model("fmo7").unwrap();
        assert!(doc.contains("representative"));
        let spec = parse_config(doc).unwrap().spec;
        assert_eq!(spec.n_sites(), 7);
        assert_eq!(spec.sink.unwrap().site, 3);
        assert_eq!(spec.output, Output::Sink);
    }

    #[test]
    fn unknown_model() {
        assert!(builtin_model("fmo8").is_err());
    }
}
