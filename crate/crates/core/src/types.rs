//! Ground types and interval-encoded type arguments.

use std::fmt;

/// Name of the implicit root class.
pub const OBJECT: &str = "Object";

/// A ground type.
///
/// `SelfBound` only ever appears as an endpoint of an [`ArgInterval`]. It is
/// the declared bound of an F-bounded parameter, which would otherwise be an
/// infinite term. Semantically it is the `?`-instantiation of the bound's
/// class, `D<?, ..>`, and it renders as such.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeTerm {
    Null,
    Class { name: String, args: Vec<ArgInterval> },
    SelfBound(SelfBound),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SelfBound {
    /// Class declaring the F-bounded parameter.
    pub owner: String,
    pub param: usize,
    /// Erasure of the declared bound.
    pub bound_class: String,
    pub bound_arity: usize,
}

/// Source syntax an argument was written in. After canonicalization the tag
/// is a function of the endpoints alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Surface {
    Invariant,
    Extends,
    Super,
    Unbounded,
    /// Both endpoints proper. Produced only by superclass substitution; it has
    /// no surface syntax.
    Between,
}

/// A type argument as the interval `[lower, upper]` of admissible types.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArgInterval {
    pub lower: TypeTerm,
    pub upper: TypeTerm,
    pub surface: Surface,
}

impl ArgInterval {
    pub fn invariant(t: TypeTerm) -> Self {
        ArgInterval {
            lower: t.clone(),
            upper: t,
            surface: Surface::Invariant,
        }
    }

    pub fn extends(upper: TypeTerm) -> Self {
        ArgInterval {
            lower: TypeTerm::Null,
            upper,
            surface: Surface::Extends,
        }
    }

    pub fn super_of(lower: TypeTerm, bound: TypeTerm) -> Self {
        ArgInterval {
            lower,
            upper: bound,
            surface: Surface::Super,
        }
    }

    pub fn unbounded(bound: TypeTerm) -> Self {
        ArgInterval {
            lower: TypeTerm::Null,
            upper: bound,
            surface: Surface::Unbounded,
        }
    }

    /// Depth of the endpoints that the surface syntax actually shows.
    fn shown_depth(&self) -> usize {
        match self.surface {
            Surface::Unbounded => 0,
            Surface::Extends => self.upper.depth(),
            Surface::Super | Surface::Invariant => self.lower.depth(),
            Surface::Between => self.lower.depth().max(self.upper.depth()),
        }
    }
}

impl TypeTerm {
    pub fn class(name: impl Into<String>, args: Vec<ArgInterval>) -> Self {
        TypeTerm::Class {
            name: name.into(),
            args,
        }
    }

    pub fn simple(name: impl Into<String>) -> Self {
        TypeTerm::class(name, Vec::new())
    }

    pub fn object() -> Self {
        TypeTerm::simple(OBJECT)
    }

    pub fn is_null(&self) -> bool {
        matches!(self, TypeTerm::Null)
    }

    pub fn is_object(&self) -> bool {
        matches!(self, TypeTerm::Class { name, args } if name == OBJECT && args.is_empty())
    }

    /// Head class name, if any. A self-bound reports its bound's class.
    pub fn head(&self) -> Option<&str> {
        match self {
            TypeTerm::Null => None,
            TypeTerm::Class { name, .. } => Some(name),
            TypeTerm::SelfBound(sb) => Some(&sb.bound_class),
        }
    }

    pub fn args(&self) -> &[ArgInterval] {
        match self {
            TypeTerm::Class { args, .. } => args,
            _ => &[],
        }
    }

    /// Nesting depth of class types inside the written arguments: 0 for
    /// `Null` and argument-free classes, one more than the deepest shown
    /// endpoint otherwise. A wildcard's implicit bound does not count.
    pub fn depth(&self) -> usize {
        match self {
            TypeTerm::Null => 0,
            TypeTerm::SelfBound(sb) => usize::from(sb.bound_arity > 0),
            TypeTerm::Class { args, .. } if args.is_empty() => 0,
            TypeTerm::Class { args, .. } => {
                1 + args.iter().map(ArgInterval::shown_depth).max().unwrap_or(0)
            }
        }
    }
}

/// Renders `t` in minimal surface syntax.
pub fn render_type(t: &TypeTerm) -> String {
    t.to_string()
}

pub fn type_depth(t: &TypeTerm) -> usize {
    t.depth()
}

impl fmt::Display for TypeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTerm::Null => f.write_str("Null"),
            TypeTerm::Class { name, args } => {
                f.write_str(name)?;
                if !args.is_empty() {
                    f.write_str("<")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(">")?;
                }
                Ok(())
            }
            TypeTerm::SelfBound(sb) => {
                f.write_str(&sb.bound_class)?;
                if sb.bound_arity > 0 {
                    f.write_str("<")?;
                    for i in 0..sb.bound_arity {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        f.write_str("?")?;
                    }
                    f.write_str(">")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for ArgInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.surface {
            Surface::Unbounded => f.write_str("?"),
            Surface::Extends => write!(f, "? extends {}", self.upper),
            Surface::Super => write!(f, "? super {}", self.lower),
            Surface::Invariant => write!(f, "{}", self.lower),
            Surface::Between => write!(f, "[{}, {}]", self.lower, self.upper),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list(arg: ArgInterval) -> TypeTerm {
        TypeTerm::class("List", vec![arg])
    }

    #[test]
    fn depth_examples() {
        assert_eq!(TypeTerm::object().depth(), 0);
        assert_eq!(TypeTerm::Null.depth(), 0);
        let ext_number = list(ArgInterval::extends(TypeTerm::simple("Number")));
        assert_eq!(ext_number.depth(), 1);
        let inner = list(ArgInterval::invariant(TypeTerm::simple("Integer")));
        assert_eq!(list(ArgInterval::extends(inner)).depth(), 2);
        // implicit bound of `?` is not written, so it does not add depth
        let bound = list(ArgInterval::invariant(TypeTerm::object()));
        assert_eq!(TypeTerm::class("M", vec![ArgInterval::unbounded(bound)]).depth(), 1);
    }

    #[test]
    fn render_examples() {
        assert_eq!(list(ArgInterval::unbounded(TypeTerm::object())).to_string(), "List<?>");
        let li = TypeTerm::class("LinkedList", vec![ArgInterval::invariant(TypeTerm::simple("Integer"))]);
        assert_eq!(render_type(&li), "LinkedList<Integer>");
        assert_eq!(render_type(&TypeTerm::Null), "Null");
        let sup = list(ArgInterval::super_of(TypeTerm::simple("A"), TypeTerm::object()));
        assert_eq!(sup.to_string(), "List<? super A>");
    }

    #[test]
    fn self_bound_renders_as_wildcard_instance() {
        let sb = TypeTerm::SelfBound(SelfBound {
            owner: "Comparable".into(),
            param: 0,
            bound_class: "Comparable".into(),
            bound_arity: 1,
        });
        assert_eq!(sb.to_string(), "Comparable<?>");
        assert_eq!(sb.depth(), 1);
    }
}
