//! Small hand-written instances shared by tests and `cumlift --seed-fixtures`.
//!
//! All three benchmark-format fixtures describe the same four real tasks
//! (durations 1, 1, 1, 2; demands 5, 3, 2, 4) on one resource of capacity 7,
//! between a dummy source and a dummy sink.

pub const EXAMPLE_SM: &str = "\
************************************************************************
file with basedata            : example4.bas
initial value random generator: 1
************************************************************************
projects                      :  1
jobs (incl. supersource/sink ):  6
horizon                       :  5
RESOURCES
  - renewable                 :  1   R
  - nonrenewable              :  0   N
  - doubly constrained        :  0   D
************************************************************************
PROJECT INFORMATION:
pronr.  #jobs rel.date duedate tardcost  MPM-Time
    1      4      0        2        0        2
************************************************************************
PRECEDENCE RELATIONS:
jobnr.    #modes  #successors   successors
   1        1          4           2   3   4   5
   2        1          1           6
   3        1          1           6
   4        1          1           6
   5        1          1           6
   6        1          0
************************************************************************
REQUESTS/DURATIONS:
jobnr. mode duration  R 1
------------------------------------------------------------------------
  1      1     0       0
  2      1     1       5
  3      1     1       3
  4      1     1       2
  5      1     2       4
  6      1     0       0
************************************************************************
RESOURCEAVAILABILITIES:
  R 1
    7
************************************************************************
";

pub const EXAMPLE_RCP: &str = "\
6 1
7

0 0 4 2 3 4 5
1 5 1 6
1 3 1 6
1 2 1 6
2 4 1 6
0 0 0
";

/// RCPSP/max fixture with a negative time lag on the arc `0 -> 1`.
pub const EXAMPLE_SCH: &str = "\
2\t1\t0\t0
0\t1\t2\t1\t2\t[-2]\t[0]
1\t1\t1\t3\t[4]
2\t1\t1\t3\t[3]
3\t1\t0
0\t1\t0\t0
1\t1\t4\t2
2\t1\t3\t1
3\t1\t0\t0
2
";

pub const MINIMAL_JSON: &str = r#"{"tasks":[{"duration":0,"demands":[0]}],"resources":[{"capacity":1}],"precedences":[],"kind":"RCPSP"}"#;

/// `(file name, contents)` pairs written by `--seed-fixtures`.
pub const ALL: &[(&str, &str)] = &[
    ("example4.sm", EXAMPLE_SM),
    ("example4.rcp", EXAMPLE_RCP),
    ("example2.sch", EXAMPLE_SCH),
    ("minimal.json", MINIMAL_JSON),
];
