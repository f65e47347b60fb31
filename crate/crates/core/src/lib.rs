pub mod cellcomplex;
pub mod classify;
pub mod edgeword;
pub mod intlinalg;
pub mod planegeom;
pub mod rewrite;
pub mod simplicial;
