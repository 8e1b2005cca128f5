//! Reference data for the eight-sentence configuration
//! ([`Configuration::eight_liar`](crate::Configuration::eight_liar)).

/// The sixteen basis tuples of the equiponderate initial state, in reasoning
/// step order starting from `1T`.
pub const EIGHT_LIAR_TUPLES: [[u32; 8]; 16] = [
    [15, 10, 8, 12, 7, 13, 4, 9],
    [14, 9, 16, 11, 6, 12, 3, 8],
    [13, 8, 7, 10, 5, 11, 2, 16],
    [12, 16, 6, 9, 4, 10, 1, 7],
    [11, 7, 5, 8, 3, 9, 15, 6],
    [10, 6, 4, 16, 2, 8, 14, 5],
    [9, 5, 3, 7, 1, 16, 13, 4],
    [8, 4, 2, 6, 15, 7, 12, 3],
    [16, 3, 1, 5, 14, 6, 11, 2],
    [7, 2, 15, 4, 13, 5, 10, 1],
    [6, 1, 14, 3, 12, 4, 9, 15],
    [5, 15, 13, 2, 11, 3, 8, 14],
    [4, 14, 12, 1, 10, 2, 16, 13],
    [3, 13, 11, 15, 9, 1, 7, 12],
    [2, 12, 10, 14, 8, 15, 6, 11],
    [1, 11, 9, 13, 16, 14, 5, 10],
];

/// Embedded indices of [`EIGHT_LIAR_TUPLES`] in the `16^8`-dimensional space.
pub const EIGHT_LIAR_EMBEDDED: [u64; 16] = [
    3917179961, 3640285992, 3345566240, 3210230023, 2789681382, 2503940053, 2217086916, 1930815155,
    4060403106, 1642316945, 1355985807, 1321312894, 1034981885, 749633644, 463306331, 177012042,
];
