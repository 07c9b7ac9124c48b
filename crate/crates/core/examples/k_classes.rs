//! K-classes of a two-point instance, tagged by λ-shape, and the check that
//! products of classes follow the 5×5 table.

use ordsemi::{
    classify_lambda, enumerate_top, lambda_class_sizes, lambda_mult_table_check, ChainPair, LambdaShape, RangeMap,
};
use ordsemi::structures::KClassPartition;

fn main() {
    let pair = ChainPair::new(7, vec![2, 4]).unwrap();
    let elements = enumerate_top(&pair, 10_000).unwrap();
    let parts = KClassPartition::from_elements(&elements);
    println!("{pair}: signature {:?}", pair.gap_signature().0);
    for class in &parts.classes {
        let shape = classify_lambda(&elements[class.members[0]]).unwrap();
        let images: Vec<String> = class.members.iter().map(|&i| format!("{:?}", elements[i].image())).collect();
        println!("{shape}: {}", images.join(" "));
    }
    println!("sizes {:?}", lambda_class_sizes(&pair).unwrap());

    print!("\n      ");
    for col in LambdaShape::ALL {
        print!("{:<5}", col.to_string());
    }
    println!();
    for row in LambdaShape::ALL {
        print!("{:<6}", row.to_string());
        for col in LambdaShape::ALL {
            let cell = row.product(col).map_or("α".to_string(), |s| s.to_string());
            print!("{cell:<5}");
        }
        println!();
    }

    let report = lambda_mult_table_check(&pair, 10_000).unwrap();
    println!("\n{} products checked, {} mismatches", report.products_checked, report.mismatches.len());
}
