use fglattice::GroupSignature;

use crate::CliError;

fn parse_int<T: std::str::FromStr>(
    what: &'static str,
    whole: &str,
    token: &str,
) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    token.trim().parse().map_err(|e: T::Err| CliError::Parse {
        what,
        input: whole.to_string(),
        why: format!("{:?}: {e}", token.trim()),
    })
}

/// `"2,4"` to the signature `(2, 4)`. The chain is validated, not sorted.
pub fn parse_signature(s: &str) -> Result<GroupSignature, CliError> {
    let factors = s
        .split(',')
        .map(|t| parse_int("signature", s, t))
        .collect::<Result<Vec<u64>, _>>()?;
    Ok(GroupSignature::new(factors)?)
}

/// `"1,1;0,2"` to rows `[[1, 1], [0, 2]]`.
pub fn parse_matrix(s: &str) -> Result<Vec<Vec<i64>>, CliError> {
    s.split(';')
        .map(|row| row.split(',').map(|t| parse_int("matrix", s, t)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signatures() {
        assert_eq!(parse_signature("2,4").unwrap().factors(), &[2, 4]);
        assert_eq!(parse_signature(" 6 ").unwrap().factors(), &[6]);
        assert!(parse_signature("4,2").is_err());
        assert!(parse_signature("2,x").is_err());
        assert!(parse_signature("").is_err());
        assert!(parse_signature("-2").is_err());
    }

    #[test]
    fn matrices() {
        assert_eq!(
            parse_matrix("1,1;0,2").unwrap(),
            vec![vec![1, 1], vec![0, 2]]
        );
        assert_eq!(parse_matrix("5").unwrap(), vec![vec![5]]);
        assert!(parse_matrix("1,;0,2").is_err());
    }
}
