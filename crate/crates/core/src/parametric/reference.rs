//! Reference encodings of the two published tables, generated from the source text.

/// `((a mod 4, b mod 4, c mod 2), marks)` with one mark per column.
pub const BIGTABLE: [((u64, u64, u64), [bool; 10]); 30] = [
    (
        (1, 1, 2),
        [
            false, false, true, false, false, false, true, false, true, false,
        ],
    ),
    (
        (1, 2, 1),
        [
            false, false, false, true, false, false, false, true, true, true,
        ],
    ),
    (
        (1, 2, 2),
        [
            false, false, true, true, false, false, true, true, true, false,
        ],
    ),
    (
        (1, 3, 1),
        [false, true, true, true, false, true, true, true, true, true],
    ),
    (
        (1, 3, 2),
        [false, true, true, true, false, true, true, true, true, true],
    ),
    (
        (1, 4, 1),
        [
            false, true, true, true, false, true, true, true, true, false,
        ],
    ),
    (
        (1, 4, 2),
        [false, true, true, true, false, true, true, true, true, true],
    ),
    (
        (2, 1, 1),
        [
            true, false, false, false, true, true, true, true, true, true,
        ],
    ),
    (
        (2, 1, 2),
        [
            true, false, false, false, true, false, true, true, true, false,
        ],
    ),
    (
        (2, 2, 1),
        [
            false, true, false, false, true, true, true, true, true, true,
        ],
    ),
    (
        (2, 2, 2),
        [false, false, true, true, true, true, true, true, true, true],
    ),
    (
        (2, 3, 1),
        [
            true, false, false, false, true, false, false, false, true, true,
        ],
    ),
    (
        (2, 3, 2),
        [
            true, false, false, false, true, true, true, true, true, true,
        ],
    ),
    (
        (2, 4, 2),
        [
            false, true, false, true, false, true, false, true, true, false,
        ],
    ),
    (
        (3, 1, 1),
        [false, true, true, true, false, true, true, true, true, true],
    ),
    (
        (3, 1, 2),
        [
            false, false, true, true, true, true, true, true, true, false,
        ],
    ),
    (
        (3, 2, 1),
        [true, true, true, true, true, false, true, true, true, true],
    ),
    (
        (3, 2, 2),
        [true, true, false, true, true, true, false, true, true, true],
    ),
    (
        (3, 3, 1),
        [
            false, true, false, false, false, true, false, false, false, true,
        ],
    ),
    (
        (3, 3, 2),
        [false, true, true, true, true, true, true, true, true, true],
    ),
    (
        (3, 4, 1),
        [true, true, false, true, true, true, true, true, true, true],
    ),
    (
        (3, 4, 2),
        [true, true, false, true, true, true, true, true, true, true],
    ),
    (
        (4, 1, 1),
        [true, true, true, true, true, true, true, true, true, true],
    ),
    (
        (4, 1, 2),
        [true, false, true, true, true, false, true, true, true, true],
    ),
    (
        (4, 2, 1),
        [
            true, true, true, true, true, true, false, false, false, true,
        ],
    ),
    (
        (4, 2, 2),
        [true, true, false, true, true, true, false, true, true, true],
    ),
    (
        (4, 3, 1),
        [true, true, true, true, true, true, true, true, true, true],
    ),
    (
        (4, 3, 2),
        [true, false, true, true, true, true, true, true, true, true],
    ),
    (
        (4, 4, 1),
        [true, true, true, true, true, true, true, true, true, true],
    ),
    (
        (4, 4, 2),
        [true, true, true, true, true, true, true, true, true, true],
    ),
];

/// `(gees, supports where ψ is 1)`; gees as digit strings, supports as keys.
pub const TABLE_TT: [(&[&str], &[&str]); 27] = [
    (&["321", "42"], &["1", "1,3", "1,4"]),
    (&["321", "42", "51"], &["1", "1,3", "1,4"]),
    (&["321", "42", "61"], &["1", "1,3", "1,4"]),
    (&["321", "43"], &["1", "1,2", "1,3", "1,4"]),
    (&["321", "43", "51"], &["1", "1,2", "1,3", "1,4"]),
    (
        &["321", "43", "52"],
        &["0", "1", "2", "5", "1,2", "1,3", "1,4", "2,5"],
    ),
    (
        &["321", "43", "52", "61"],
        &["0", "1", "2", "5", "1,2", "1,3", "1,4", "2,5"],
    ),
    (&["321", "43", "61"], &["1", "1,2", "1,3", "1,4"]),
    (
        &["321", "43", "62"],
        &["1", "1,2", "1,3", "1,4", "1,5", "1,6"],
    ),
    (&["321", "52"], &["0", "1", "2", "5", "1,3", "1,4", "2,5"]),
    (
        &["321", "52", "61"],
        &["0", "1", "2", "5", "1,3", "1,4", "2,5"],
    ),
    (&["321", "53"], &["1", "2", "3", "1,4", "2,4", "3,4"]),
    (&["321", "53", "61"], &["1", "2", "3", "1,4", "2,4", "3,4"]),
    (&["321", "53", "62"], &["1", "2", "3", "1,4", "2,4", "3,4"]),
    (&["321", "62"], &["0", "1", "2", "4", "1,4", "2,4", "3,4"]),
    (&["321", "63"], &["1", "2", "3", "1,4", "2,4", "3,4"]),
    (&["421", "43"], &["1", "1,2", "1,3", "1,4"]),
    (&["421", "43", "51"], &["1", "1,2", "1,3", "1,4"]),
    (
        &["421", "43", "52"],
        &["0", "1", "2", "5", "1,2", "1,3", "1,4", "2,5"],
    ),
    (
        &["421", "43", "52", "61"],
        &["0", "1", "2", "5", "1,2", "1,3", "1,4", "2,5"],
    ),
    (&["421", "43", "61"], &["1", "1,2", "1,3", "1,4"]),
    (
        &["421", "43", "62"],
        &["1", "1,2", "1,3", "1,4", "1,5", "1,6"],
    ),
    (
        &["421", "52"],
        &["0", "1", "2", "5", "1,2", "1,3", "1,4", "2,5"],
    ),
    (
        &["421", "52", "61"],
        &["0", "1", "2", "5", "1,3", "1,4", "2,5"],
    ),
    (&["421", "62"], &["0", "1", "2", "5", "1,5", "2,5"]),
    (&["521", "62"], &["1", "1,3", "1,4", "1,5", "1,6"]),
    (&["43", "52", "61"], &["1", "1,6"]),
];
