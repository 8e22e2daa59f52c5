use std::collections::HashMap;
use std::sync::Arc;

use super::{AnnotationDocument, AnnotationNode, AnnotationValue};

struct Resolver<'a> {
    index: HashMap<&'a str, &'a AnnotationNode>,
    // Nodes whose resolution never hit a cycle guard, with every @id in the
    // resolved subtree. Reused only when none of those ids is on the stack.
    done: HashMap<String, (Arc<AnnotationNode>, Vec<String>)>,
    stack: Vec<String>,
    warnings: Vec<String>,
}

impl<'a> Resolver<'a> {
    fn index_nested(&mut self, node: &'a AnnotationNode) {
        for (_, values) in &node.properties {
            for v in values {
                if let AnnotationValue::Node(child) = v {
                    if let Some(id) = &child.node_id {
                        self.index.entry(id).or_insert(child);
                    }
                    self.index_nested(child);
                }
            }
        }
    }

    /// Returns the resolved node, whether a cycle guard fired beneath it,
    /// and the ids it contains.
    fn node(&mut self, node: &AnnotationNode) -> (AnnotationNode, bool, Vec<String>) {
        let mut ids = Vec::new();
        if let Some(id) = &node.node_id {
            self.stack.push(id.clone());
            ids.push(id.clone());
        }
        let mut cyclic = false;
        let properties = node
            .properties
            .iter()
            .map(|(name, values)| {
                let values = values
                    .iter()
                    .map(|v| {
                        let (v, c, sub) = self.value(v);
                        cyclic |= c;
                        ids.extend(sub);
                        v
                    })
                    .collect();
                (name.clone(), values)
            })
            .collect();
        if node.node_id.is_some() {
            self.stack.pop();
        }
        (
            AnnotationNode {
                types: node.types.clone(),
                node_id: node.node_id.clone(),
                properties,
            },
            cyclic,
            ids,
        )
    }

    fn value(&mut self, value: &AnnotationValue) -> (AnnotationValue, bool, Vec<String>) {
        match value {
            AnnotationValue::Reference(id) => {
                if self.stack.iter().any(|s| s == id) {
                    warn(
                        &mut self.warnings,
                        format!("reference cycle through {id:?} left unresolved"),
                    );
                    return (value.clone(), true, Vec::new());
                }
                if let Some((done, ids)) = self.done.get(id) {
                    if !ids.iter().any(|i| self.stack.contains(i)) {
                        return (AnnotationValue::Node(done.clone()), false, ids.clone());
                    }
                }
                let Some(target) = self.index.get(id.as_str()).copied() else {
                    warn(&mut self.warnings, format!("unresolved reference {id:?}"));
                    return (value.clone(), false, Vec::new());
                };
                let (resolved, cyclic, ids) = self.node(target);
                let resolved = Arc::new(resolved);
                if !cyclic {
                    self.done.insert(id.clone(), (resolved.clone(), ids.clone()));
                }
                (AnnotationValue::Node(resolved), cyclic, ids)
            }
            AnnotationValue::Node(child) => {
                let (resolved, cyclic, ids) = self.node(child);
                (AnnotationValue::Node(Arc::new(resolved)), cyclic, ids)
            }
            scalar => (scalar.clone(), false, Vec::new()),
        }
    }
}

fn warn(warnings: &mut Vec<String>, msg: String) {
    if !warnings.contains(&msg) {
        warnings.push(msg);
    }
}

/// Replaces `@id` references with the node of that id from the same
/// document. Unknown ids stay references; a reference back into the node
/// chain currently being expanded also stays a reference. Both cases add a
/// warning. Idempotent.
pub fn resolve_references(doc: &AnnotationDocument) -> AnnotationDocument {
    let mut resolver = Resolver {
        index: HashMap::new(),
        done: HashMap::new(),
        stack: Vec::new(),
        warnings: doc.parse_warnings.clone(),
    };
    // Roots win over nested definitions of the same id, so that an
    // already resolved document indexes the same targets again.
    for root in &doc.roots {
        if let Some(id) = &root.node_id {
            resolver.index.entry(id).or_insert(root);
        }
    }
    for root in &doc.roots {
        resolver.index_nested(root);
    }
    let roots = doc.roots.iter().map(|r| resolver.node(r).0).collect();
    AnnotationDocument {
        roots,
        source: doc.source.clone(),
        parse_warnings: resolver.warnings,
    }
}
