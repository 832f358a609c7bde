//! The guide's code snippets, compiled and run as doc-tests so the book
//! cannot drift from the library. Each item carries one chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub struct IntroductionChapter;

#[doc = include_str!("../../../book/src/girth.md")]
pub struct GirthChapter;

#[doc = include_str!("../../../book/src/enumeration.md")]
pub struct EnumerationChapter;

#[doc = include_str!("../../../book/src/chains.md")]
pub struct ChainsChapter;

#[doc = include_str!("../../../book/src/affine-length.md")]
pub struct AffineLengthChapter;

#[doc = include_str!("../../../book/src/equidistribution.md")]
pub struct EquidistributionChapter;

#[doc = include_str!("../../../book/src/continued-fractions.md")]
pub struct ContinuedFractionsChapter;

#[doc = include_str!("../../../book/src/curves.md")]
pub struct CurvesChapter;

#[doc = include_str!("../../../book/src/cli.md")]
pub struct CliChapter;
