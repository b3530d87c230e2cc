//! Quality scanning: syntax verdicts plus a structural rule engine.

mod pattern;
mod rules;

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use pattern::{Match, Pattern, PatternError};
pub use rules::{load_rule_file, parse_rules, Category, Formula, Rule, RuleError, Severity};

use crate::ids::FuncId;
use crate::pylex;
use crate::syntax::{self, Ast};

const BUILTIN_RULES: &str = include_str!("builtin_rules.yaml");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub rule_id: String,
    pub severity: Severity,
    pub category: Category,
    /// 1-based inclusive line range within the scanned code.
    pub lines: (usize, usize),
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cwe: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Clean,
    LowQuality,
    SyntacticallyIncorrect,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanVerdict {
    pub func_id: FuncId,
    pub status: Status,
    #[serde(default)]
    pub findings: Vec<Finding>,
}

impl ScanVerdict {
    pub fn max_severity(&self) -> Option<Severity> {
        self.findings.iter().map(|f| f.severity).max()
    }
}

/// Immutable, deduplicated rule set.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    rules: Vec<Rule>,
}

impl Registry {
    /// Keeps the first rule for every id.
    pub fn new(rules: impl IntoIterator<Item = Rule>) -> Self {
        let mut seen = HashSet::new();
        Registry { rules: rules.into_iter().filter(|r| seen.insert(r.rule_id.clone())).collect() }
    }

    pub fn builtin() -> Self {
        Registry::new(builtin_rules())
    }

    /// Built-in rules (unless disabled) followed by the rules in `paths`.
    pub fn load(paths: &[impl AsRef<Path>], include_builtin: bool) -> Result<Self, RuleError> {
        let mut all = if include_builtin { builtin_rules() } else { Vec::new() };
        for p in paths {
            all.extend(load_rule_file(p.as_ref())?);
        }
        Ok(Registry::new(all))
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.rule_id == id)
    }
}

pub fn builtin_rules() -> Vec<Rule> {
    parse_rules(BUILTIN_RULES, "builtin").expect("built-in rules are valid")
}

/// True iff `code` parses as one complete function definition.
pub fn check_syntax(code: &str) -> bool {
    syntax::check_syntax(code)
}

/// Findings of one rule on a parsed function.
pub fn match_rule(rule: &Rule, tree: &Ast) -> Vec<Finding> {
    rule.matches(tree)
        .iter()
        .map(|m| Finding {
            rule_id: rule.rule_id.clone(),
            severity: rule.severity,
            category: rule.category,
            lines: (m.start_row as usize + 1, m.end_row as usize + 1),
            message: rule.render_message(m),
            cwe: rule.cwe.clone(),
        })
        .collect()
}

/// Classify one function's code.
pub fn scan_code(func_id: FuncId, code: &str, registry: &Registry) -> ScanVerdict {
    let incorrect = ScanVerdict { func_id, status: Status::SyntacticallyIncorrect, findings: Vec::new() };
    let structure_ok = pylex::tokenize(code)
        .ok()
        .is_some_and(|t| pylex::check_block_structure(&t).is_ok());
    if !structure_ok {
        return incorrect;
    }
    let tree = syntax::parse(code);
    if !syntax::is_single_function(&tree) {
        return incorrect;
    }
    let ast = Ast::from_tree(code, &tree);
    let findings: Vec<Finding> = registry.rules().iter().flat_map(|r| match_rule(r, &ast)).collect();
    let status = if findings.is_empty() { Status::Clean } else { Status::LowQuality };
    ScanVerdict { func_id, status, findings }
}
