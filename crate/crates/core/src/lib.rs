pub mod algebra;
pub mod criteria;
pub mod jetcheck;
pub mod linalg;
pub mod lp;
pub mod repmodel;
pub mod repvar;
pub mod shell;
pub mod torus;
