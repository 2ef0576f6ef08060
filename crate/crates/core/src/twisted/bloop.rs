use super::{thetas, TwistedSubgroup};
use crate::error::{Error, Result};
use crate::loopcore::{check_properties, left_translation, FiniteLoop};
use crate::permgroup::{PermGroup, Permutation};

/// `z^{k+1}` when `z` has odd order `2k+1`.
pub fn square_root_in(group: &PermGroup, z: usize) -> Option<usize> {
    let order = group.element_order(z);
    (order % 2 == 1).then(|| group.pow(z, (order as i64 + 1) / 2))
}

/// The three equivalent forms of 2-divisibility, evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoDivisibility {
    pub divisible: bool,
    pub all_orders_odd: bool,
    pub no_involution: bool,
    /// Square root of each member (by position), as ambient indices.
    pub roots: Option<Vec<usize>>,
    /// A member of even order, if any.
    pub even_order_member: Option<usize>,
}

/// Squaring bijective on `T`, all orders odd, and no element of order 2;
/// checks that the three agree and that they force `|T|` odd.
pub fn is_two_divisible(t: &TwistedSubgroup) -> Result<TwoDivisibility> {
    let g = t.ambient();
    let squares: std::collections::BTreeSet<usize> = t.members().iter().map(|&x| g.mul(x, x)).collect();
    let divisible = squares.len() == t.len() && squares.iter().all(|&s| t.contains(s));
    let even_order_member = t.members().iter().copied().find(|&x| g.element_order(x).is_multiple_of(2));
    let all_orders_odd = even_order_member.is_none();
    let no_involution = t.members().iter().all(|&x| g.element_order(x) != 2);
    if divisible != all_orders_odd || all_orders_odd != no_involution {
        return Err(Error::violation(
            "2-divisibility equivalences",
            format!(
                "squaring bijective: {divisible}, all orders odd: {all_orders_odd}, no involution: {no_involution}"
            ),
        ));
    }
    if divisible && t.len().is_multiple_of(2) {
        return Err(Error::violation(
            "2-divisible twisted subgroups have odd order",
            format!("|T| = {}", t.len()),
        ));
    }
    let roots = if divisible {
        let roots: Vec<usize> =
            t.members().iter().map(|&z| square_root_in(g, z).expect("odd order")).collect();
        for (&z, &r) in t.members().iter().zip(&roots) {
            if !t.contains(r) || g.mul(r, r) != z {
                return Err(Error::violation("square roots", format!("root {r} of {z} is wrong")));
            }
        }
        Some(roots)
    } else {
        None
    };
    Ok(TwoDivisibility { divisible, all_orders_odd, no_involution, roots, even_order_member })
}

/// `T(1/2) = (T, ⊙)` with `x ⊙ y = (x y² x)^{1/2}`.
#[derive(Clone, Debug)]
pub struct BLoopResult {
    pub bloop: FiniteLoop,
    /// Loop element `i` is the ambient element `index_map[i]`.
    pub index_map: Vec<usize>,
}

fn roots_of(t: &TwistedSubgroup) -> Result<Vec<usize>> {
    let div = is_two_divisible(t)?;
    div.roots.ok_or_else(|| Error::NotTwoDivisible(div.even_order_member.unwrap_or(0)))
}

/// Builds `T(1/2)` and checks that it is a B-loop, that its powers are the
/// group powers, that `b_x = s⁻¹ θ_x s`, and that squaring maps `⊙` onto
/// `⊙′`.
pub fn bloop_of(t: &TwistedSubgroup) -> Result<BLoopResult> {
    let g = t.ambient();
    let roots = roots_of(t)?;
    let pos = |x: usize| t.position(x).expect("member");
    let root_pos = |x: usize| pos(roots[pos(x)]);
    let k = t.len();
    let mut table = Vec::with_capacity(k * k);
    for &x in t.members() {
        for &y in t.members() {
            let inner = g.mul(g.mul(x, g.mul(y, y)), x);
            table.push(root_pos(inner));
        }
    }
    let bloop =
        FiniteLoop::from_table(k, table).map_err(|e| Error::violation("T(1/2) is a loop", e.to_string()))?;
    let props = check_properties(&bloop);
    if !(props.bruck && props.two_divisible) {
        return Err(Error::violation(
            "T(1/2) is a B-loop",
            format!("bruck: {}, 2-divisible: {}", props.bruck, props.two_divisible),
        ));
    }
    for (i, &x) in t.members().iter().enumerate() {
        let order = g.element_order(x);
        if bloop.element_order(i) != order {
            return Err(Error::violation(
                "powers agree in T and T(1/2)",
                format!("element {x} has order {order} in G, {} in T(1/2)", bloop.element_order(i)),
            ));
        }
        for e in -(order as i64)..=(order as i64) {
            if bloop.power(i, e) != pos(g.pow(x, e)) {
                return Err(Error::violation(
                    "powers agree in T and T(1/2)",
                    format!("power {e} of element {x} differs"),
                ));
            }
        }
    }
    let s = squaring_permutation(t);
    let s_inv = s.inverse();
    for (i, th) in thetas(t).iter().enumerate() {
        if left_translation(&bloop, i) != &(&s_inv * th) * &s {
            return Err(Error::violation("b_x = s⁻¹ θ_x s", format!("fails at member {}", t.members()[i])));
        }
    }
    let prime = odot_prime_table(t)?;
    for a in 0..k {
        for b in 0..k {
            if s.apply(bloop.mul(a, b)) != prime[s.apply(a) * k + s.apply(b)] {
                return Err(Error::violation(
                    "squaring is an isomorphism onto ⊙′",
                    format!("fails at positions ({a}, {b})"),
                ));
            }
        }
    }
    Ok(BLoopResult { bloop, index_map: t.members().to_vec() })
}

/// `s(x) = x²` on member positions.
pub fn squaring_permutation(t: &TwistedSubgroup) -> Permutation {
    let g = t.ambient();
    let images = t.members().iter().map(|&x| t.position(g.mul(x, x)).expect("x·1·x lies in T")).collect();
    Permutation::from_images(images).expect("squaring is a bijection on 2-divisible T")
}

/// `x ⊙′ y = x^{1/2} y x^{1/2}` on member positions, row-major.
pub fn odot_prime_table(t: &TwistedSubgroup) -> Result<Vec<usize>> {
    let g = t.ambient();
    let roots = roots_of(t)?;
    let mut out = Vec::with_capacity(t.len() * t.len());
    for &r in &roots {
        for &y in t.members() {
            out.push(t.position(g.mul(g.mul(r, y), r)).expect("closed under xyx"));
        }
    }
    Ok(out)
}

/// `x ⋆ y = x y⁻¹ x` on member positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuandleTable {
    pub size: usize,
    pub table: Vec<usize>,
}

impl QuandleTable {
    pub fn star(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }
}

/// Builds `(T, ⋆)` and checks it is idempotent, left key, left
/// distributive and balanced.
pub fn quandle_star(t: &TwistedSubgroup) -> Result<QuandleTable> {
    let g = t.ambient();
    let k = t.len();
    let mut table = Vec::with_capacity(k * k);
    for &x in t.members() {
        for &y in t.members() {
            table.push(t.position(g.mul(g.mul(x, g.inv(y)), x)).expect("closed under xy⁻¹x"));
        }
    }
    let q = QuandleTable { size: k, table };
    let fail = |what: &str, x: usize, y: usize| {
        Err(Error::violation("involutory quandle laws", format!("{what} fails at positions ({x}, {y})")))
    };
    for x in 0..k {
        if q.star(x, x) != x {
            return fail("idempotence", x, x);
        }
        for y in 0..k {
            if q.star(x, q.star(x, y)) != y {
                return fail("left key", x, y);
            }
            if (q.star(x, y) == y) != (q.star(y, x) == x) {
                return fail("balance", x, y);
            }
            for z in 0..k {
                if q.star(x, q.star(y, z)) != q.star(q.star(x, y), q.star(x, z)) {
                    return fail("left distributivity", x, y);
                }
            }
        }
    }
    Ok(q)
}
