//! Published Diophantine tuples embedded as a regression corpus: historical
//! quadruples, Euler's quintuple, Gibbs's sextuple, and the high-rank
//! quadruples behind each torsion class. Every entry verifies exactly.

use crate::diophantine::{parse_tuple_str, DioTuple};

/// Name and comma-separated elements for every embedded tuple.
pub const CORPUS: &[(&str, &str)] = &[
    ("diophantus", "1/16,33/16,17/4,105/16"),
    ("fermat", "1,3,8,120"),
    ("euler-quintuple", "1,3,8,120,777480/8288641"),
    (
        "gibbs-sextuple",
        "11/192,35/192,155/27,512/27,1235/48,180873/16",
    ),
    (
        "gibbs-quadruple-1",
        "1218560/31752611,111/77,34191/19712,1155/16",
    ),
    ("gibbs-quadruple-2", "8064/597529,1408/75,16225/48,3337875/16"),
    (
        "gibbs-quadruple-3",
        "43875/232324,71200/47961,1633824/623045,671/20",
    ),
    (
        "z2z2-rank10-1",
        "19635/6532,-46592463/201832268,84196064/50458067,-1144273/8775316",
    ),
    (
        "z2z2-rank10-2",
        "2325/4012,187020623/9949760,261411943/9949760,13104399/146320",
    ),
    (
        "z2z4-rank6-1",
        "32/7,15/14,4808055945/27887662112,-7/32",
    ),
    (
        "z2z4-rank6-2",
        "791/138,24800/54579,14188099227120/9044268302161,-138/791",
    ),
    (
        "z2z6-rank3-1",
        "-16051953/11214104,-170244712/1784519841,914623/5622936,5498328/10310521",
    ),
    (
        "z2z6-rank3-2",
        "-18873668/3382575,821921100/5086844387,-26226421/4890900,1090383/6661892",
    ),
    (
        "z2z8-rank3",
        "1804/1197,-226796/539847,303199/239932,-1197/1804",
    ),
];

/// The checked tuple for one corpus entry; panics on an unknown name
/// (the names are compiled in, so a miss is a programming error).
pub fn fixture(name: &str) -> DioTuple {
    let (_, csv) = CORPUS
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no fixture named {name:?}"));
    let elems = parse_tuple_str(csv).expect("corpus entries parse");
    DioTuple::new(elems).expect("corpus entries verify")
}

/// Every embedded tuple with its name, each re-verified on construction.
pub fn all_fixtures() -> Vec<(&'static str, DioTuple)> {
    CORPUS.iter().map(|(n, _)| (*n, fixture(n))).collect()
}

/// The corpus in tuple-file format (a `# name` comment above each line),
/// accepted verbatim by `parse_tuple_file`.
pub fn corpus_text() -> String {
    let mut out = String::new();
    for (name, csv) in CORPUS {
        out.push_str("# ");
        out.push_str(name);
        out.push('\n');
        out.push_str(csv);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diophantine::parse_tuple_file;

    #[test]
    fn every_fixture_verifies() {
        let all = all_fixtures();
        assert_eq!(all.len(), 14);
        for (name, tuple) in &all {
            assert!(tuple.len() >= 4, "{name}");
        }
        assert_eq!(fixture("fermat").elements()[3], "120".parse().unwrap());
        assert_eq!(fixture("euler-quintuple").len(), 5);
        assert_eq!(fixture("gibbs-sextuple").len(), 6);
    }

    #[test]
    fn corpus_text_round_trips_through_the_file_parser() {
        let entries = parse_tuple_file(&corpus_text()).unwrap();
        assert_eq!(entries.len(), CORPUS.len());
        for (entry, (name, _)) in entries.iter().zip(CORPUS) {
            assert_eq!(
                entry.elements,
                fixture(name).elements(),
                "line {}",
                entry.line
            );
        }
    }

    #[test]
    #[should_panic(expected = "no fixture named")]
    fn unknown_names_panic() {
        fixture("nonexistent");
    }
}
