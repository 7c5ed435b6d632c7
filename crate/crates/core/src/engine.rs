//! One loaded set of lexicons and models, able to run every method.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::combiner::{combined_classify, EnsembleConfig};
use crate::error::{Error, Result};
use crate::lexicon::{
    bundled_file, CategoryLexicon, ConceptLexicon, EmoticonLexicon, LexiconFormat, MoodLexicon, ScoreLexicon,
    StrengthLexicon, SynsetLexicon, ValenceLexicon,
};
use crate::methods::{
    emoticon_classify, happiness_classify, liwc_classify, panas_classify, sasa_classify, senticnet_classify,
    sentiwordnet_classify, strength_classify, MethodId, SasaModel, Verdict,
};
use crate::textcore::{Message, Token, Tokenizer};

/// Environment variable naming the default lexicon directory.
pub const LEXICON_DIR_ENV: &str = "SENTIMETER_LEXICON_DIR";

/// File each method reads from a lexicon directory.
pub fn lexicon_file(method: MethodId) -> Option<&'static str> {
    Some(match method {
        MethodId::Emoticons => "emoticons.tsv",
        MethodId::Liwc => "categories.tsv",
        MethodId::SentiStrength => "strength.txt",
        MethodId::SentiWordNet => "sentiwordnet.tsv",
        MethodId::SenticNet => "senticnet.tsv",
        MethodId::Sasa => "sasa.model",
        MethodId::HappinessIndex => "anew.tsv",
        MethodId::PanasT => "panas.tsv",
        MethodId::Combined => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodInfo {
    pub id: MethodId,
    pub description: String,
    pub lexicon_loaded: bool,
}

#[derive(Debug, Clone, Default)]
pub struct Engine {
    tokenizer: Tokenizer,
    emoticons: Option<EmoticonLexicon>,
    categories: Option<CategoryLexicon>,
    strength: Option<StrengthLexicon>,
    synsets: Option<SynsetLexicon>,
    concepts: Option<ConceptLexicon>,
    valence: Option<ValenceLexicon>,
    moods: Option<MoodLexicon>,
    sasa: Option<SasaModel>,
}

fn parse_source<L: LexiconFormat>(text: &str, origin: &str) -> Result<L> {
    L::parse(text, origin)
}

impl Engine {
    /// Every method, using the lexicons compiled into the crate.
    pub fn bundled() -> Self {
        Self::from_source(|name| {
            let file = bundled_file(name).expect("bundled file exists");
            Ok(Some((file.contents.to_string(), format!("bundled {name}"))))
        })
        .expect("bundled lexicons are valid")
    }

    /// Loads whatever lexicon files exist in `dir`. A missing file disables
    /// its method; a present but invalid file is an error.
    pub fn from_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        if !dir.is_dir() {
            return Err(Error::InvalidConfig(format!("lexicon directory {} does not exist", dir.display())));
        }
        Self::from_source(|name| {
            let path = dir.join(name);
            match std::fs::read_to_string(&path) {
                Ok(text) => Ok(Some((text, path.display().to_string()))),
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
                Err(e) => Err(Error::io(&path, e)),
            }
        })
    }

    fn from_source(mut read: impl FnMut(&str) -> Result<Option<(String, String)>>) -> Result<Self> {
        let mut engine = Engine::default();
        let mut load = |method: MethodId| read(lexicon_file(method).expect("base method"));

        if let Some((text, origin)) = load(MethodId::Emoticons)? {
            engine.emoticons = Some(parse_source(&text, &origin)?);
        }
        if let Some((text, origin)) = load(MethodId::Liwc)? {
            engine.categories = Some(parse_source(&text, &origin)?);
        }
        if let Some((text, origin)) = load(MethodId::SentiStrength)? {
            engine.strength = Some(parse_source(&text, &origin)?);
        }
        if let Some((text, origin)) = load(MethodId::SentiWordNet)? {
            match parse_source::<ScoreLexicon>(&text, &origin)? {
                ScoreLexicon::Synset(lex) => engine.synsets = Some(lex),
                ScoreLexicon::Concept(_) => {
                    return Err(Error::InvalidConfig(format!("{origin}: expected word<TAB>pos<TAB>neg<TAB>obj rows")))
                }
            }
        }
        if let Some((text, origin)) = load(MethodId::SenticNet)? {
            match parse_source::<ScoreLexicon>(&text, &origin)? {
                ScoreLexicon::Concept(lex) => engine.concepts = Some(lex),
                ScoreLexicon::Synset(_) => {
                    return Err(Error::InvalidConfig(format!("{origin}: expected concept<TAB>score rows")))
                }
            }
        }
        if let Some((text, origin)) = load(MethodId::HappinessIndex)? {
            engine.valence = Some(parse_source(&text, &origin)?);
        }
        if let Some((text, origin)) = load(MethodId::PanasT)? {
            engine.moods = Some(parse_source(&text, &origin)?);
        }
        if let Some((text, origin)) = load(MethodId::Sasa)? {
            engine.sasa = Some(SasaModel::parse(&text, &origin)?);
        }
        engine.rebuild_tokenizer();
        Ok(engine)
    }

    /// Uses `dir` when given, otherwise the directory named by
    /// [`LEXICON_DIR_ENV`], otherwise the bundled lexicons.
    pub fn from_dir_or_env(dir: Option<&Path>) -> Result<Self> {
        match dir {
            Some(dir) => Self::from_dir(dir),
            None => match std::env::var_os(LEXICON_DIR_ENV) {
                Some(dir) if !dir.is_empty() => Self::from_dir(Path::new(&dir)),
                _ => Ok(Self::bundled()),
            },
        }
    }

    fn rebuild_tokenizer(&mut self) {
        let mut symbols: Vec<String> = Vec::new();
        if let Some(lex) = &self.emoticons {
            symbols.extend(lex.symbols().map(str::to_string));
        }
        if let Some(lex) = &self.strength {
            symbols.extend(lex.emoticon_symbols().map(str::to_string));
        }
        self.tokenizer = Tokenizer::new(symbols);
    }

    pub fn with_sasa(mut self, model: SasaModel) -> Self {
        self.sasa = Some(model);
        self
    }

    pub fn tokenizer(&self) -> &Tokenizer {
        &self.tokenizer
    }

    pub fn emoticons(&self) -> Option<&EmoticonLexicon> {
        self.emoticons.as_ref()
    }

    pub fn moods(&self) -> Option<&MoodLexicon> {
        self.moods.as_ref()
    }

    pub fn sasa(&self) -> Option<&SasaModel> {
        self.sasa.as_ref()
    }

    /// True when the method has what it needs to classify. The ensemble is
    /// always available.
    pub fn is_loaded(&self, method: MethodId) -> bool {
        match method {
            MethodId::Emoticons => self.emoticons.is_some(),
            MethodId::Liwc => self.categories.is_some(),
            MethodId::SentiStrength => self.strength.is_some(),
            MethodId::SentiWordNet => self.synsets.is_some(),
            MethodId::SenticNet => self.concepts.is_some(),
            MethodId::Sasa => self.sasa.is_some(),
            MethodId::HappinessIndex => self.valence.is_some(),
            MethodId::PanasT => self.moods.is_some(),
            MethodId::Combined => true,
        }
    }

    pub fn methods(&self) -> Vec<MethodInfo> {
        MethodId::ALL
            .into_iter()
            .chain([MethodId::Combined])
            .map(|id| MethodInfo {
                id,
                description: id.description().to_string(),
                lexicon_loaded: self.is_loaded(id),
            })
            .collect()
    }

    /// One base method on pre-tokenized text. A method without a lexicon
    /// returns an undetermined verdict.
    pub fn classify_tokens(&self, method: MethodId, tokens: &[Token]) -> Verdict {
        let verdict = match method {
            MethodId::Emoticons => self.emoticons.as_ref().map(|l| emoticon_classify(tokens, l)),
            MethodId::Liwc => self.categories.as_ref().map(|l| liwc_classify(tokens, l)),
            MethodId::SentiStrength => self.strength.as_ref().map(|l| strength_classify(tokens, l)),
            MethodId::SentiWordNet => self.synsets.as_ref().map(|l| sentiwordnet_classify(tokens, l)),
            MethodId::SenticNet => self.concepts.as_ref().map(|l| senticnet_classify(tokens, l)),
            MethodId::Sasa => self.sasa.as_ref().map(|m| sasa_classify(m, tokens)),
            MethodId::HappinessIndex => self.valence.as_ref().map(|l| happiness_classify(tokens, l)),
            MethodId::PanasT => self.moods.as_ref().map(|l| panas_classify(tokens, l)),
            MethodId::Combined => None,
        };
        verdict.unwrap_or_else(|| Verdict::undetermined(method))
    }

    /// Verdicts for `methods`, in the given order. `Combined` is computed
    /// from the ensemble's members.
    pub fn analyze(&self, text: &str, methods: &[MethodId], ensemble: &EnsembleConfig) -> Result<Vec<Verdict>> {
        let tokens = self.tokenizer.tokenize(text);
        let mut out = Vec::with_capacity(methods.len());
        for &method in methods {
            if method == MethodId::Combined {
                out.push(self.combine_tokens(&tokens, ensemble)?);
            } else {
                out.push(self.classify_tokens(method, &tokens));
            }
        }
        Ok(out)
    }

    /// The ensemble verdict for a text.
    pub fn combine(&self, text: &str, ensemble: &EnsembleConfig) -> Result<Verdict> {
        self.combine_tokens(&self.tokenizer.tokenize(text), ensemble)
    }

    fn combine_tokens(&self, tokens: &[Token], ensemble: &EnsembleConfig) -> Result<Verdict> {
        let members: Vec<Verdict> = ensemble
            .members()
            .iter()
            .map(|m| self.classify_tokens(*m, tokens))
            .collect();
        combined_classify(&members, ensemble)
    }

    /// Runs each base method over every message; lists are aligned with
    /// `messages`.
    pub fn classify_corpus<'a, I>(&self, messages: I, methods: &[MethodId]) -> BTreeMap<MethodId, Vec<Verdict>>
    where
        I: IntoIterator<Item = &'a Message>,
    {
        let mut out: BTreeMap<MethodId, Vec<Verdict>> = methods
            .iter()
            .filter(|m| **m != MethodId::Combined)
            .map(|m| (*m, Vec::new()))
            .collect();
        for message in messages {
            let tokens = self.tokenizer.tokenize(&message.text);
            for (method, list) in out.iter_mut() {
                list.push(self.classify_tokens(*method, &tokens));
            }
        }
        out
    }
}
