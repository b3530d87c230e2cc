//! Python parsing: a per-thread tree-sitter parser, a compact arena copy of
//! the syntax tree for matching, and the whole-function syntax check.

use std::cell::RefCell;

use tree_sitter::{Language, Node, Parser, Tree};

use crate::pylex;

thread_local! {
    static PARSER: RefCell<Parser> = RefCell::new(new_parser());
}

pub fn language() -> Language {
    tree_sitter_python::LANGUAGE.into()
}

fn new_parser() -> Parser {
    let mut parser = Parser::new();
    parser
        .set_language(&language())
        .expect("bundled Python grammar matches the tree-sitter ABI");
    parser
}

/// Parse Python source with this thread's parser.
pub fn parse(src: &str) -> Tree {
    PARSER.with(|p| {
        p.borrow_mut()
            .parse(src, None)
            .expect("parser has a language and no timeout")
    })
}

/// Node id within an [`Ast`].
pub type NodeId = u32;

#[derive(Debug, Clone)]
pub struct AstNode {
    pub kind: &'static str,
    pub named: bool,
    pub start: u32,
    pub end: u32,
    pub start_row: u32,
    pub end_row: u32,
    pub parent: NodeId,
    first_child: u32,
    child_count: u32,
}

/// Arena copy of a tree-sitter tree. Comments and commas are left out, so
/// list-like children line up item by item.
#[derive(Debug, Clone)]
pub struct Ast {
    pub src: String,
    nodes: Vec<AstNode>,
    children: Vec<NodeId>,
    has_error: bool,
}

pub const ROOT: NodeId = 0;

impl Ast {
    pub fn parse(src: &str) -> Ast {
        let tree = parse(src);
        Ast::from_tree(src, &tree)
    }

    pub fn from_tree(src: &str, tree: &Tree) -> Ast {
        let root = tree.root_node();
        let mut ast = Ast {
            src: src.to_string(),
            nodes: Vec::with_capacity(256),
            children: Vec::with_capacity(256),
            has_error: root.has_error(),
        };
        ast.nodes.push(make_node(root, ROOT));
        let mut stack = vec![(root, ROOT)];
        let mut cursor = root.walk();
        while let Some((node, id)) = stack.pop() {
            let kept: Vec<Node> = node
                .children(&mut cursor)
                .filter(|c| c.kind() != "comment" && c.kind() != ",")
                .collect();
            let first = ast.children.len() as u32;
            for child in &kept {
                let child_id = ast.nodes.len() as NodeId;
                ast.nodes.push(make_node(*child, id));
                ast.children.push(child_id);
            }
            let n = &mut ast.nodes[id as usize];
            n.first_child = first;
            n.child_count = kept.len() as u32;
            for (i, child) in kept.into_iter().enumerate().rev() {
                stack.push((child, ast.children[first as usize + i]));
            }
        }
        ast
    }

    pub fn has_error(&self) -> bool {
        self.has_error
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> &AstNode {
        &self.nodes[id as usize]
    }

    pub fn kind(&self, id: NodeId) -> &'static str {
        self.nodes[id as usize].kind
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        let n = &self.nodes[id as usize];
        &self.children[n.first_child as usize..(n.first_child + n.child_count) as usize]
    }

    pub fn text(&self, id: NodeId) -> &str {
        let n = &self.nodes[id as usize];
        &self.src[n.start as usize..n.end as usize]
    }

    /// Leaf texts joined by single spaces: a layout-insensitive rendering
    /// used to compare metavariable bindings.
    pub fn normalized_text(&self, id: NodeId) -> String {
        let mut out = String::new();
        self.push_leaves(id, &mut out);
        out
    }

    fn push_leaves(&self, id: NodeId, out: &mut String) {
        let kids = self.children(id);
        if kids.is_empty() || self.kind(id) == "string" {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(self.text(id));
        } else {
            for &c in kids {
                self.push_leaves(c, out);
            }
        }
    }

    /// All node ids in pre-order (document order).
    pub fn preorder(&self) -> impl Iterator<Item = NodeId> + '_ {
        let mut stack = vec![ROOT];
        std::iter::from_fn(move || {
            let id = stack.pop()?;
            stack.extend(self.children(id).iter().rev());
            Some(id)
        })
    }

    pub fn is_descendant_or_self(&self, id: NodeId, ancestor: NodeId) -> bool {
        let mut cur = id;
        loop {
            if cur == ancestor {
                return true;
            }
            if cur == ROOT {
                return false;
            }
            cur = self.nodes[cur as usize].parent;
        }
    }
}

fn make_node(n: Node<'_>, parent: NodeId) -> AstNode {
    AstNode {
        kind: n.kind(),
        named: n.is_named(),
        start: n.start_byte() as u32,
        end: n.end_byte() as u32,
        start_row: n.start_position().row as u32,
        end_row: n.end_position().row as u32,
        parent,
        first_child: 0,
        child_count: 0,
    }
}

/// True iff `code` parses as exactly one complete function definition
/// (optionally decorated) with nothing but comments around it.
pub fn check_syntax(code: &str) -> bool {
    let Ok(tokens) = pylex::tokenize(code) else {
        return false;
    };
    if pylex::check_block_structure(&tokens).is_err() {
        return false;
    }
    is_single_function(&parse(code))
}

/// Error-free tree whose root holds exactly one (possibly decorated)
/// function definition and otherwise only comments.
pub fn is_single_function(tree: &Tree) -> bool {
    let root = tree.root_node();
    if root.has_error() {
        return false;
    }
    let mut cursor = root.walk();
    let mut defs = 0;
    for child in root.children(&mut cursor) {
        match child.kind() {
            "comment" => {}
            "function_definition" => defs += 1,
            "decorated_definition"
                if child
                    .child_by_field_name("definition")
                    .is_some_and(|d| d.kind() == "function_definition") =>
            {
                defs += 1
            }
            _ => return false,
        }
    }
    defs == 1
}
