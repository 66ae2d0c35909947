//! Bundled reference table of published Gini index values.
//!
//! Ten national figures plus two frequently cited extras (the city of
//! Moscow and Bolivia), ordered by Gini. Values are round survey
//! figures from the years noted; notes carry source caveats.

/// One row of the bundled table: a published Gini index for a country
/// or region, with its survey year when one is attached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountryRecord {
    /// Country or region name.
    pub name: &'static str,
    /// Published Gini index, in (0, 1).
    pub gini: f64,
    /// Survey year, when the source attaches one.
    pub year: Option<u16>,
    /// Free-text caveat about the figure; empty when none applies.
    pub note: &'static str,
}

const COUNTRIES: &[CountryRecord] = &[
    CountryRecord {
        name: "Norway",
        gini: 0.25,
        year: Some(2008),
        note: "",
    },
    CountryRecord {
        name: "France",
        gini: 0.32,
        year: Some(2008),
        note: "also reported as 0.327 for the same year",
    },
    CountryRecord {
        name: "Russia",
        gini: 0.423,
        year: Some(2008),
        note: "",
    },
    CountryRecord {
        name: "Nigeria",
        gini: 0.437,
        year: Some(2003),
        note: "",
    },
    CountryRecord {
        name: "United States",
        gini: 0.45,
        year: Some(2007),
        note: "",
    },
    CountryRecord {
        name: "Mexico",
        gini: 0.482,
        year: Some(2008),
        note: "",
    },
    CountryRecord {
        name: "Moscow (city)",
        gini: 0.521,
        year: Some(2009),
        note: "a commonly cited degree of 2.742 for this value is \
               inconsistent with m = 2G/(1-G), which gives 2.175",
    },
    CountryRecord {
        name: "Haiti",
        gini: 0.538,
        year: Some(2001),
        note: "",
    },
    CountryRecord {
        name: "Bolivia",
        gini: 0.592,
        year: None,
        note: "no survey year attached; often quoted with a \
               top-to-bottom decile ratio near 168",
    },
    CountryRecord {
        name: "Sierra Leone",
        gini: 0.629,
        year: Some(1989),
        note: "",
    },
    CountryRecord {
        name: "South Africa",
        gini: 0.65,
        year: Some(2005),
        note: "",
    },
    CountryRecord {
        name: "Namibia",
        gini: 0.707,
        year: Some(2003),
        note: "survey estimates range from 0.707 up to 0.75",
    },
];

/// The bundled table, ordered by ascending Gini index.
pub fn countries() -> &'static [CountryRecord] {
    COUNTRIES
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_ordered_and_in_range() {
        let rows = countries();
        assert_eq!(rows.len(), 12);
        let mut previous = 0.0;
        for row in rows {
            assert!(row.gini > 0.0 && row.gini < 1.0, "{}", row.name);
            assert!(row.gini >= previous, "{} out of order", row.name);
            previous = row.gini;
            if let Some(year) = row.year {
                assert!((1900..2100).contains(&year), "{}", row.name);
            }
        }
    }

    #[test]
    fn named_rows_hold_expected_values() {
        let find = |name: &str| {
            countries()
                .iter()
                .find(|r| r.name == name)
                .unwrap_or_else(|| panic!("{name} missing"))
        };
        assert_eq!(find("Norway").gini, 0.25);
        assert_eq!(find("Russia").gini, 0.423);
        assert_eq!(find("Namibia").gini, 0.707);
        assert_eq!(find("Sierra Leone").year, Some(1989));

        let moscow = find("Moscow (city)");
        assert_eq!(moscow.gini, 0.521);
        assert!(moscow.note.contains("2.742") && moscow.note.contains("2.175"));

        let bolivia = find("Bolivia");
        assert_eq!(bolivia.year, None);
        assert!(bolivia.note.contains("168"));
    }

    #[test]
    fn ten_national_rows_plus_two_extras() {
        let extras = ["Moscow (city)", "Bolivia"];
        let nationals = countries()
            .iter()
            .filter(|r| !extras.contains(&r.name))
            .count();
        assert_eq!(nationals, 10);
    }
}
