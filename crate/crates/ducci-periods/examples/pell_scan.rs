// Negative Pell equations x^2 - p y^2 = -1 solved by continued fractions,
// and the odd-solution scan for x^2 - p y^2 = -4. When the latter has no
// odd solution for a prime p = 5 mod 8 with 2 a primitive root, the Ducci
// period P(p) divides B2(p) / 3 rather than just B2(p).

use ducci_periods::arith::is_prime_u64;
use ducci_periods::pell::{negative_pell_fundamental, pell_no_odd_solutions};
use ducci_periods::period::order_of_two;

fn main() {
    println!("fundamental solutions of x^2 - p y^2 = -1:");
    for p in (5u64..=101).filter(|&p| p % 4 == 1 && is_prime_u64(p)) {
        match negative_pell_fundamental(p) {
            Ok((x, y)) => println!("  p = {:3}  x = {:10}  y = {}", p, x, y),
            Err(e) => println!("  p = {:3}  {}", p, e),
        }
    }

    println!("\nodd solutions of x^2 - p y^2 = -4, p = 5 mod 8:");
    for p in (5u64..=101).filter(|&p| p % 8 == 5 && is_prime_u64(p)) {
        let res = match pell_no_odd_solutions(p) {
            Ok(res) => res,
            Err(_) => continue,
        };
        let primitive = order_of_two(p).unwrap() == p - 1;
        match res.witness {
            Some((x, y)) => println!("  p = {:3}  odd solution x = {}, y = {}", p, x, y),
            None if primitive => println!("  p = {:3}  none, so P({}) | B2({}) / 3", p, p, p),
            None => println!("  p = {:3}  none", p),
        }
    }
}
