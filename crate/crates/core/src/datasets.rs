//! Embedded example data.

use crate::network::ValuedNetwork;

// Notes borrowing among 13 social-informatics students, from a May 1993
// survey ("How often did you borrow notes from this person?", answered on
// a 1-20 line with 1 meaning never; 1 was subtracted so 0 means no
// borrowing). The network is loop-free: the diagonal carries no meaning.
const STUDENTS: [[f64; 13]; 13] = [
    [0.0, 0.0, 0.0, 15.0, 0.0, 0.0, 0.0, 1.0, 8.0, 0.0, 0.0, 0.0, 3.0],
    [0.0, 0.0, 2.0, 3.0, 0.0, 0.0, 5.0, 5.0, 10.0, 10.0, 1.0, 3.0, 0.0],
    [0.0, 0.0, 0.0, 19.0, 0.0, 0.0, 0.0, 3.0, 1.0, 0.0, 0.0, 0.0, 0.0],
    [2.0, 0.0, 6.0, 0.0, 1.0, 0.0, 0.0, 1.0, 19.0, 0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 16.0, 0.0, 5.0, 0.0, 7.0, 16.0, 0.0, 5.0, 0.0, 3.0],
    [0.0, 0.0, 1.0, 0.0, 4.0, 0.0, 0.0, 7.0, 3.0, 0.0, 7.0, 3.0, 1.0],
    [0.0, 0.0, 6.0, 14.0, 0.0, 0.0, 0.0, 14.0, 6.0, 0.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 5.0, 0.0, 0.0, 0.0, 0.0, 6.0, 0.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 19.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.0, 16.0, 2.0, 16.0, 0.0, 1.0, 0.0, 16.0, 0.0, 0.0, 1.0, 2.0, 0.0],
    [0.0, 0.0, 2.0, 8.0, 2.0, 2.0, 0.0, 5.0, 14.0, 0.0, 0.0, 2.0, 0.0],
    [2.0, 2.0, 8.0, 2.0, 2.0, 2.0, 2.0, 2.0, 6.0, 2.0, 11.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0, 8.0, 0.0, 0.0, 8.0, 3.0, 0.0, 0.0, 0.0, 0.0],
];

/// The embedded notes-borrowing network (13 students, loop-free).
pub fn students() -> ValuedNetwork {
    let matrix = STUDENTS.iter().map(|r| r.to_vec()).collect();
    ValuedNetwork::new(matrix, Vec::new(), false).expect("embedded fixture is valid")
}
