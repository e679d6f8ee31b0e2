use std::fs;

use gitstab::{parse_poly, Error, HPoly, Result};

use crate::PolyInput;

/// Number of variables implied by the largest `z<i>` in `text`, at least 2.
pub fn infer_n_vars(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut max = 1;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'z' {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(idx) = text[start..j].parse::<usize>() {
                max = max.max(idx + 1);
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    max.max(2)
}

pub fn read_poly(input: &PolyInput) -> Result<HPoly> {
    let text = match (&input.poly, &input.file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?,
        (None, None) => return Err(Error::InvalidArgument("need -f/--poly or --file".into())),
    };
    let n = input.n_vars.unwrap_or_else(|| infer_n_vars(&text));
    parse_poly(text.trim(), n)
}
