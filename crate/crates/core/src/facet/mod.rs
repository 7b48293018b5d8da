//! Multi-facet index over the archive and the single-filter query behind the
//! linked map, timeline, theme, and photo-grid views.

mod filter;
mod index;
mod postings;
mod theme;

pub use filter::{FilterError, FilterState, DEFAULT_PAGE_SIZE};
pub use index::{build_index, AggregateSet, FacetIndex, IndexError, QueryResult, TimelineCell};
pub use theme::{ThemeNode, ThemeTree};
